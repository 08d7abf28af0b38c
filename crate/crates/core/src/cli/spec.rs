//! Variety names: `Gr(k,N)`, `OGr(k,N)`, `SGr(k,2n)`, `B(n,k)`, `E7/P7`,
//! `P^n` and products such as `P2xP3` or `product 2,3`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gpqh::{homogeneous_operator, QHOperator};
use crate::prodspaces::{product_operator, ProductSpec};
use crate::rootsys::{CartanType, Family};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarization {
    Anticanonical,
    Unit,
    Weights(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietySpec {
    Homogeneous { family: Family, rank: usize, node: usize },
    Product { dims: Vec<usize>, polarization: Polarization },
}

fn bad(s: &str, why: &str) -> Error {
    Error::Config(format!("cannot read variety {s:?}: {why}"))
}

/// Splits `"X(a,b)"` into `("X", [a, b])`.
fn call(s: &str) -> Option<(&str, Vec<usize>)> {
    let open = s.find('(')?;
    let inner = s[open + 1..].strip_suffix(')')?;
    let args = inner.split(',').map(|t| t.trim().parse().ok()).collect::<Option<Vec<usize>>>()?;
    Some((s[..open].trim(), args))
}

fn parse_dims(s: &str) -> Option<Vec<usize>> {
    let t = s.replace(['×', '*'], "x");
    if let Some(rest) = t.strip_prefix("product") {
        return rest.trim().split(',').map(|x| x.trim().parse().ok()).collect();
    }
    let parts: Vec<&str> = t.split('x').map(str::trim).collect();
    if parts.len() < 2 {
        return None;
    }
    parts
        .iter()
        .map(|p| p.strip_prefix("P^").or_else(|| p.strip_prefix('P')).and_then(|d| d.trim().parse().ok()))
        .collect()
}

fn parse_polarization(s: &str) -> Option<Polarization> {
    let t = s.trim().trim_start_matches(',').trim();
    match t {
        "" | "anticanonical" | "-K" => return Some(Polarization::Anticanonical),
        "unit" => return Some(Polarization::Unit),
        _ => {}
    }
    let inner = t.strip_prefix("O(").and_then(|r| r.strip_suffix(')')).or_else(|| t.strip_prefix("weights"))?;
    let w: Vec<usize> = inner.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    if w.iter().all(|&x| x == 1) {
        Some(Polarization::Unit)
    } else {
        Some(Polarization::Weights(w))
    }
}

impl VarietySpec {
    pub fn parse(input: &str) -> Result<VarietySpec> {
        let s = input.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).filter(|t| !t.contains('(') || t.contains("O(")).unwrap_or(s);
        if s.starts_with("product") || s.contains('x') || s.contains('×') {
            let (body, pol) = match s.find([',', ' ']).filter(|_| !s.starts_with("product")) {
                Some(i) => (&s[..i], &s[i..]),
                None => match s.find(" O(").or_else(|| s.find(" anti")).or_else(|| s.find(" weights")) {
                    Some(i) => (&s[..i], &s[i..]),
                    None => (s, ""),
                },
            };
            let dims = parse_dims(body).ok_or_else(|| bad(input, "unreadable product factors"))?;
            let polarization = parse_polarization(pol).ok_or_else(|| bad(input, "unreadable polarization"))?;
            let v = VarietySpec::Product { dims, polarization };
            v.product_spec()?;
            return Ok(v);
        }
        if let Some(d) = s.strip_prefix("P^").or_else(|| s.strip_prefix('P')) {
            if let Ok(n) = d.trim().parse::<usize>() {
                return VarietySpec::homogeneous(Family::A, n, 1);
            }
        }
        if let Some((fam, node)) = s.split_once("/P") {
            let f = Family::parse(&fam[..1]).ok_or_else(|| bad(input, "unknown family"))?;
            let rank = fam[1..].parse().map_err(|_| bad(input, "bad rank"))?;
            let node = node.parse().map_err(|_| bad(input, "bad node"))?;
            return VarietySpec::homogeneous(f, rank, node);
        }
        let (name, args) = call(s).ok_or_else(|| bad(input, "expected NAME(a,b)"))?;
        let [a, b] = args[..] else { return Err(bad(input, "expected two arguments")) };
        match name {
            "Gr" => {
                if a == 0 || a >= b {
                    return Err(bad(input, "need 0 < k < N"));
                }
                VarietySpec::homogeneous(Family::A, b - 1, a)
            }
            "OGr" => {
                let (k, m) = (a, b);
                if m % 2 == 1 {
                    VarietySpec::homogeneous(Family::B, m / 2, k)
                } else {
                    let n = m / 2;
                    if k == n {
                        VarietySpec::homogeneous(Family::D, n, n - 1)
                    } else if k + 1 == n {
                        Err(bad(input, "OGr(n-1,2n) is not a quotient by a maximal parabolic"))
                    } else {
                        VarietySpec::homogeneous(Family::D, n, k)
                    }
                }
            }
            "SGr" | "LGr" => {
                if b % 2 == 1 {
                    return Err(bad(input, "symplectic Grassmannians need even N"));
                }
                VarietySpec::homogeneous(Family::C, b / 2, a)
            }
            _ => {
                let f = Family::parse(name).ok_or_else(|| bad(input, "unknown family"))?;
                VarietySpec::homogeneous(f, a, b)
            }
        }
    }

    fn homogeneous(family: Family, rank: usize, node: usize) -> Result<VarietySpec> {
        CartanType::new(family, rank)?;
        if node == 0 || node > rank {
            return Err(Error::Config(format!("node {node} out of range for {family}{rank}")));
        }
        Ok(VarietySpec::Homogeneous { family, rank, node })
    }

    /// Product with explicit weights, replacing the polarization.
    pub fn with_weights(self, weights: &[usize]) -> Result<VarietySpec> {
        match self {
            VarietySpec::Product { dims, .. } => {
                let polarization = if weights.iter().all(|&w| w == 1) {
                    Polarization::Unit
                } else {
                    Polarization::Weights(weights.to_vec())
                };
                let v = VarietySpec::Product { dims, polarization };
                v.product_spec()?;
                Ok(v)
            }
            _ => Err(Error::Config("weights apply to products only".into())),
        }
    }

    pub fn product_spec(&self) -> Result<ProductSpec> {
        match self {
            VarietySpec::Product { dims, polarization } => match polarization {
                Polarization::Anticanonical => ProductSpec::anticanonical(dims.clone()),
                Polarization::Unit => ProductSpec::unit(dims.clone()),
                Polarization::Weights(w) => ProductSpec::new(dims.clone(), w.clone()),
            },
            _ => Err(Error::Config("not a product".into())),
        }
    }

    pub fn build(&self) -> Result<QHOperator> {
        match self {
            VarietySpec::Homogeneous { family, rank, node } => homogeneous_operator(*family, *rank, *node),
            VarietySpec::Product { .. } => product_operator(&self.product_spec()?),
        }
    }

    /// Canonical name, also used as the cache key.
    pub fn canonical(&self) -> String {
        match self {
            VarietySpec::Homogeneous { family, rank, node } => format!("{family}({rank},{node})"),
            VarietySpec::Product { dims, polarization } => {
                let d: Vec<String> = dims.iter().map(|n| format!("P{n}")).collect();
                let p = match polarization {
                    Polarization::Anticanonical => "anticanonical".to_string(),
                    Polarization::Unit => format!("O({})", vec!["1"; dims.len()].join(",")),
                    Polarization::Weights(w) => {
                        format!("O({})", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    }
                };
                format!("{} {p}", d.join("x"))
            }
        }
    }

    /// Other names of the same variety.
    pub fn aliases(&self) -> Vec<String> {
        let VarietySpec::Homogeneous { family, rank, node } = *self else { return Vec::new() };
        let (n, k) = (rank, node);
        let mut out = vec![format!("{family}{n}/P{k}")];
        match family {
            Family::A if k == 1 => {
                out.push(format!("Gr(1,{})", n + 1));
                out.push(format!("P^{n}"));
            }
            Family::A => out.push(format!("Gr({k},{})", n + 1)),
            Family::B => out.push(format!("OGr({k},{})", 2 * n + 1)),
            Family::C => out.push(format!("SGr({k},{})", 2 * n)),
            Family::D if k + 2 <= n => out.push(format!("OGr({k},{})", 2 * n)),
            Family::D if k + 1 == n || k == n => out.push(format!("OGr({n},{})", 2 * n)),
            _ => {}
        }
        out
    }

    pub fn is_product(&self) -> bool {
        matches!(self, VarietySpec::Product { .. })
    }

    /// Products polarized by something other than `−K`, where Euler's
    /// constant may appear.
    pub fn needs_euler(&self) -> bool {
        matches!(self, VarietySpec::Product { polarization, .. } if *polarization != Polarization::Anticanonical)
    }
}

impl std::fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl std::str::FromStr for VarietySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<VarietySpec> {
        VarietySpec::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> (Family, usize, usize) {
        match VarietySpec::parse(s).unwrap() {
            VarietySpec::Homogeneous { family, rank, node } => (family, rank, node),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grassmannian_names() {
        assert_eq!(gp("Gr(2,5)"), (Family::A, 4, 2));
        assert_eq!(gp("A4/P2"), (Family::A, 4, 2));
        assert_eq!(gp("A(4,2)"), (Family::A, 4, 2));
        assert_eq!(gp("P^3"), (Family::A, 3, 1));
    }

    #[test]
    fn orthogonal_and_symplectic_names() {
        assert_eq!(gp("OGr(4,9)"), (Family::B, 4, 4));
        assert_eq!(gp("B(4,4)"), (Family::B, 4, 4));
        assert_eq!(gp("OGr(5,10)"), (Family::D, 5, 4));
        assert_eq!(gp("OGr(2,8)"), (Family::D, 4, 2));
        assert_eq!(gp("SGr(2,6)"), (Family::C, 3, 2));
        assert_eq!(gp("E(7,7)"), (Family::E, 7, 7));
        assert!(VarietySpec::parse("OGr(4,10)").is_err());
        assert!(VarietySpec::parse("E(9,1)").is_err());
    }

    #[test]
    fn products() {
        let p = VarietySpec::parse("P2xP3").unwrap();
        assert_eq!(p, VarietySpec::Product { dims: vec![2, 3], polarization: Polarization::Anticanonical });
        let q = VarietySpec::parse("(P^2×P^3, O(1,1))").unwrap();
        assert_eq!(q, VarietySpec::Product { dims: vec![2, 3], polarization: Polarization::Unit });
        let r = VarietySpec::parse("product 2,3").unwrap().with_weights(&[1, 1]).unwrap();
        assert_eq!(r, q);
        assert_eq!(q.canonical(), "P2xP3 O(1,1)");
        assert_eq!(VarietySpec::parse(&q.canonical()).unwrap(), q);
        assert_eq!(VarietySpec::parse("P2xP2 O(1,2)").unwrap().canonical(), "P2xP2 O(1,2)");
    }

    #[test]
    fn canonical_names_round_trip() {
        for s in ["Gr(3,7)", "OGr(3,9)", "SGr(3,10)", "OGr(5,10)", "F(4,1)"] {
            let v = VarietySpec::parse(s).unwrap();
            assert_eq!(VarietySpec::parse(&v.canonical()).unwrap(), v);
            for a in v.aliases() {
                assert_eq!(VarietySpec::parse(&a).unwrap(), v, "{a}");
            }
        }
    }
}
