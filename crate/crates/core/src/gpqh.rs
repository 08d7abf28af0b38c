//! Schubert bases of `G/P` for maximal parabolics and the operator of
//! quantum multiplication by the ample generator.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseMat};
use crate::rootsys::{self, compose, perm_length, project_min, CartanType, Family, RootDatum, WeylElem};

pub const FORMAT_VERSION: &str = "apery-operator 1";

#[derive(Clone, Debug)]
pub struct SchubertBasis {
    pub datum: RootDatum,
    pub node: usize,
    pub elements: Vec<WeylElem>,
    pub codim: Vec<usize>,
    pub dim_x: usize,
    lookup: HashMap<Vec<u16>, usize>,
}

impl SchubertBasis {
    pub fn new(datum: RootDatum, node: usize) -> Result<SchubertBasis> {
        let elements = rootsys::coset_min_reps(&datum, node)?;
        let codim: Vec<usize> = elements.iter().map(|u| u.length()).collect();
        let dim_x = *codim.last().unwrap();
        let lookup = elements.iter().enumerate().map(|(i, u)| (u.perm.clone(), i)).collect();
        Ok(SchubertBasis { datum, node, elements, codim, dim_x, lookup })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, perm: &[u16]) -> Option<usize> {
        self.lookup.get(perm).copied()
    }
}

/// `u ↦ w_0 u w_{0,P}` on basis indices.
pub fn poincare_involution(b: &SchubertBasis) -> Result<Vec<usize>> {
    let d = &b.datum;
    let w0 = d.longest();
    let gens: Vec<usize> = (0..d.rank()).filter(|&j| j + 1 != b.node).collect();
    let w0p = d.longest_in(&gens);
    b.elements
        .iter()
        .map(|u| {
            let p = compose(&compose(&w0.perm, &u.perm), &w0p.perm);
            b.index_of(&p).ok_or_else(|| Error::Internal(format!("w0 {} w0P is not minimal", u.word_string())))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Homogeneous { family: Family, rank: usize, node: usize },
    Product { dims: Vec<usize>, weights: Vec<usize> },
}

/// Quantum multiplication by the polarization: `H ⋆ = Σ_d q^d M_d`.
///
/// `matrices[d][target][source]`; every basis element is labeled by its
/// codimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QHOperator {
    pub kind: OperatorKind,
    pub matrices: Vec<SparseMat>,
    pub fano_index: Option<u32>,
    pub dim_x: usize,
    pub grading: Vec<usize>,
    pub labels: Vec<String>,
    pub involution: Vec<usize>,
}

impl QHOperator {
    pub fn size(&self) -> usize {
        self.grading.len()
    }

    pub fn max_degree(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn classical(&self) -> &SparseMat {
        &self.matrices[0]
    }

    /// Number of Lefschetz blocks, `dim ker M_0`.
    pub fn mu(&self) -> usize {
        self.size() - classical_rank(self)
    }

    /// Length multiplicities of the basis.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0; self.dim_x + 1];
        for &g in &self.grading {
            b[g] += 1;
        }
        b
    }

    pub fn name(&self) -> String {
        match &self.kind {
            OperatorKind::Homogeneous { family, rank, node } => format!("{family}{rank}/P{node}"),
            OperatorKind::Product { dims, weights } => {
                let d: Vec<String> = dims.iter().map(|n| format!("P{n}")).collect();
                let w: Vec<String> = weights.iter().map(|n| n.to_string()).collect();
                format!("{} O({})", d.join("x"), w.join(","))
            }
        }
    }

    /// Checks nilpotency, grading, self-adjointness and positivity.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.size();
        let mut p = self.matrices[0].clone();
        for _ in 0..self.dim_x {
            p = p.matmul(&self.matrices[0]);
        }
        if !p.is_zero() {
            return Err(Error::Internal(format!("{}: M_0 is not nilpotent", self.name())));
        }
        for (d, m) in self.matrices.iter().enumerate() {
            for (r, c, v) in m.entries() {
                if v <= 0 {
                    return Err(Error::Internal(format!("{}: nonpositive entry in M_{d}", self.name())));
                }
                if d == 0 || self.fano_index.is_some() {
                    let shift = 1 - (self.fano_index.unwrap_or(0) as i64) * d as i64;
                    if self.grading[r] as i64 != self.grading[c] as i64 + shift {
                        return Err(Error::Internal(format!("{}: entry ({r},{c}) of M_{d} breaks the grading", self.name())));
                    }
                }
                let (ri, ci) = (self.involution[c], self.involution[r]);
                if m.get(ri, ci) != v {
                    return Err(Error::Internal(format!("{}: M_{d} is not self-adjoint at ({r},{c})", self.name())));
                }
            }
            if m.size() != n {
                return Err(Error::Internal("matrix size mismatch".into()));
            }
        }
        Ok(())
    }

    fn header_lines(&self) -> Vec<String> {
        let mut h = vec![FORMAT_VERSION.to_string()];
        match &self.kind {
            OperatorKind::Homogeneous { family, rank, node } => {
                h.push("kind gp".into());
                h.push(format!("family {family}"));
                h.push(format!("rank {rank}"));
                h.push(format!("node {node}"));
            }
            OperatorKind::Product { dims, weights } => {
                h.push("kind product".into());
                h.push(format!("dims {}", join(dims)));
                h.push(format!("weights {}", join(weights)));
            }
        }
        h.push(match self.fano_index {
            Some(r) => format!("fano_index {r}"),
            None => "fano_index none".into(),
        });
        h.push(format!("dim {}", self.dim_x));
        h.push(format!("basis_size {}", self.size()));
        h.push(format!("degrees {}", self.max_degree()));
        h.push(format!("grading {}", join(&self.grading)));
        h.push(format!("involution {}", join(&self.involution)));
        h.push(format!("labels {}", self.labels.join(" ")));
        h
    }

    fn body(&self) -> String {
        let mut s = self.header_lines().join("\n");
        s.push('\n');
        for (d, m) in self.matrices.iter().enumerate() {
            let mut es: Vec<(usize, usize, i64)> = m.entries().collect();
            es.sort();
            for (r, c, v) in es {
                let _ = writeln!(s, "{d} {r} {c} {v}");
            }
        }
        s
    }

    /// SHA-256 of the canonical text form.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.body().as_bytes()))
    }

    pub fn to_text(&self) -> String {
        let body = self.body();
        let sum = hex::encode(Sha256::digest(body.as_bytes()));
        format!("{body}checksum {sum}\n")
    }

    pub fn from_text(text: &str) -> Result<QHOperator> {
        let first = text.lines().next().unwrap_or("");
        if first != FORMAT_VERSION {
            return Err(Error::Version { found: first.to_string(), expected: FORMAT_VERSION.to_string() });
        }
        let Some(pos) = text.rfind("checksum ") else { return Err(Error::Checksum) };
        let (body, tail) = text.split_at(pos);
        let sum = tail["checksum ".len()..].trim();
        if hex::encode(Sha256::digest(body.as_bytes())) != sum {
            return Err(Error::Checksum);
        }
        let mut fields: HashMap<&str, &str> = HashMap::new();
        let mut entries = Vec::new();
        for line in body.lines().skip(1) {
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            if key.bytes().all(|b| b.is_ascii_digit()) && !key.is_empty() {
                let nums: Vec<i64> = line.split_whitespace().map(|t| t.parse().map_err(|_| bad(line))).collect::<Result<_>>()?;
                if nums.len() != 4 {
                    return Err(bad(line));
                }
                entries.push(nums);
            } else {
                fields.insert(key, rest);
            }
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| Error::Parse(format!("missing field {k}")));
        let num = |k: &str| -> Result<usize> { get(k)?.trim().parse().map_err(|_| Error::Parse(format!("bad field {k}"))) };
        let list = |k: &str| -> Result<Vec<usize>> {
            get(k)?.split_whitespace().map(|t| t.parse().map_err(|_| Error::Parse(format!("bad field {k}")))).collect()
        };
        let kind = match get("kind")? {
            "gp" => OperatorKind::Homogeneous {
                family: Family::parse(get("family")?.trim()).ok_or_else(|| Error::Parse("bad family".into()))?,
                rank: num("rank")?,
                node: num("node")?,
            },
            "product" => OperatorKind::Product { dims: list("dims")?, weights: list("weights")? },
            other => return Err(Error::Parse(format!("unknown kind {other}"))),
        };
        let fano_index = match get("fano_index")?.trim() {
            "none" => None,
            s => Some(s.parse().map_err(|_| Error::Parse("bad fano_index".into()))?),
        };
        let n = num("basis_size")?;
        let degrees = num("degrees")?;
        let mut matrices = vec![SparseMat::zeros(n); degrees + 1];
        for e in entries {
            let (d, r, c) = (e[0] as usize, e[1] as usize, e[2] as usize);
            if d > degrees || r >= n || c >= n {
                return Err(Error::Parse("entry out of range".into()));
            }
            matrices[d].add(r, c, e[3]);
        }
        Ok(QHOperator {
            kind,
            matrices,
            fano_index,
            dim_x: num("dim")?,
            grading: list("grading")?,
            labels: get("labels")?.split_whitespace().map(String::from).collect(),
            involution: list("involution")?,
        })
    }
}

fn bad(line: &str) -> Error {
    Error::Parse(format!("malformed line: {line}"))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn classical_operator(op: &QHOperator) -> &SparseMat {
    op.classical()
}

pub fn classical_rank(op: &QHOperator) -> usize {
    let dense: Vec<Vec<BigInt>> = op.matrices[0].to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    linalg::rank(dense, op.size())
}

/// Quantum condition of the Chevalley formula.
///
/// Fulton and Woodward: for `u ∈ W^P` and a simple root
/// `β` not in `P`,
///
/// ```text
/// σ_{s_β} ⋆ σ_u = Σ <ω_β, α^∨> σ_{u s_α}
///                 + Σ <ω_β, α^∨> q^{d(α)} σ_{π_P(u s_α)}
/// ```
///
/// The first sum runs over `α ∈ R^+ \ R_P^+` with `ℓ(u s_α) = ℓ(u) + 1`
/// and `u s_α ∈ W^P`. The second runs over `α ∈ R^+ \ R_P^+` with
/// `ℓ(π_P(u s_α)) = ℓ(u) + 1 − ∫_{d(α)} c_1(T_X)`, where `d(α)` is the
/// class of `α^∨` modulo the coroots of `P`.
pub fn quantum_condition(len_u: usize, len_projected: usize, c1_on_alpha: i64) -> bool {
    len_projected as i64 == len_u as i64 + 1 - c1_on_alpha
}

pub fn quantum_chevalley_operator(d: &RootDatum, node: usize) -> Result<QHOperator> {
    let basis = SchubertBasis::new(d.clone(), node)?;
    let k = node - 1;
    let n = basis.len();
    let m = d.num_positive();
    let outside: Vec<usize> = (0..m).filter(|&a| d.positive_roots[a][k] > 0).collect();

    // 2ρ − 2ρ_P is the sum of the roots outside P.
    let mut two_rho_diff = vec![0i64; d.rank()];
    for &a in &outside {
        for (x, y) in two_rho_diff.iter_mut().zip(&d.positive_roots[a]) {
            *x += y;
        }
    }

    let mut r: Option<i64> = None;
    let mut degree_of = Vec::new();
    for &a in &outside {
        let deg = d.coroots[a][k];
        let c1 = d.coroot_pairing(&two_rho_diff, a);
        if deg <= 0 || c1 % deg != 0 {
            return Err(Error::Internal(format!("c_1 pairing {c1} not a multiple of degree {deg}")));
        }
        match r {
            None => r = Some(c1 / deg),
            Some(r0) if r0 != c1 / deg => {
                return Err(Error::Internal(format!("inconsistent Fano index {r0} vs {}", c1 / deg)));
            }
            _ => {}
        }
        degree_of.push((a, deg, c1));
    }
    let r = r.ok_or_else(|| Error::Internal("no roots outside the parabolic".into()))?;
    let max_deg = degree_of.iter().map(|t| t.1).max().unwrap_or(0) as usize;
    let mut matrices = vec![SparseMat::zeros(n); max_deg + 1];

    for (ui, u) in basis.elements.iter().enumerate() {
        let lu = basis.codim[ui];
        for &(a, deg, c1) in &degree_of {
            let x = compose(&u.perm, d.reflection_perm(a));
            let lx = perm_length(&x);
            if lx == lu + 1 {
                if let Some(xi) = basis.index_of(&x) {
                    matrices[0].add(xi, ui, deg);
                }
            }
            let y = project_min(d, node, &x);
            if quantum_condition(lu, perm_length(&y), c1) {
                let yi = basis
                    .index_of(&y)
                    .ok_or_else(|| Error::Internal("projection left the quotient".into()))?;
                if basis.codim[yi] as i64 != lu as i64 + 1 - r * deg {
                    return Err(Error::Internal("quantum term breaks the grading".into()));
                }
                matrices[deg as usize].add(yi, ui, deg);
            }
        }
    }
    while matrices.len() > 1 && matrices.last().unwrap().is_zero() {
        matrices.pop();
    }
    let involution = poincare_involution(&basis)?;
    let op = QHOperator {
        kind: OperatorKind::Homogeneous { family: d.cartan.family, rank: d.rank(), node },
        matrices,
        fano_index: Some(r as u32),
        dim_x: basis.dim_x,
        grading: basis.codim.clone(),
        labels: basis.elements.iter().map(|u| u.word_string()).collect(),
        involution,
    };
    op.check_invariants()?;
    Ok(op)
}

/// Operator for `G/P` given by family, rank and node.
pub fn homogeneous_operator(family: Family, rank: usize, node: usize) -> Result<QHOperator> {
    let d = rootsys::build_root_datum(CartanType::new(family, rank)?)?;
    quantum_chevalley_operator(&d, node)
}

/// Partition of a Schubert class of `Gr(k, N)` = `A_{N-1}/P_k`.
pub fn typea_partition(u: &WeylElem, k: usize, n: usize) -> Vec<usize> {
    let mut one_line: Vec<usize> = (0..n).collect();
    for j in 0..n {
        let mut v = j;
        for &i in u.word.iter().rev() {
            let i = i as usize;
            if v == i {
                v = i + 1;
            } else if v == i + 1 {
                v = i;
            }
        }
        one_line[j] = v;
    }
    (0..k).map(|i| one_line[k - 1 - i] - (k - 1 - i)).collect()
}

/// `H ⋆ σ_λ` on `Gr(k, N)` by the quantum Pieri rule.
pub fn pieri_oracle_typea(k: usize, n: usize, partition: &[usize]) -> Result<Vec<(Vec<usize>, usize, i64)>> {
    if partition.len() > k
        || partition.iter().any(|&p| p > n - k)
        || partition.windows(2).any(|w| w[0] < w[1])
    {
        return Err(Error::Precondition(format!("{partition:?} is not a partition in a {k}x{} box", n - k)));
    }
    let mut lam = partition.to_vec();
    lam.resize(k, 0);
    let mut out = Vec::new();
    for i in 0..k {
        let fits = lam[i] < n - k && (i == 0 || lam[i - 1] > lam[i]);
        if fits {
            let mut mu = lam.clone();
            mu[i] += 1;
            out.push((mu, 0, 1));
        }
    }
    if lam[0] == n - k && lam[k - 1] > 0 {
        let mut mu: Vec<usize> = lam[1..].iter().map(|x| x - 1).collect();
        mu.push(0);
        out.push((mu, 1, 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line() {
        let op = homogeneous_operator(Family::A, 1, 1).unwrap();
        assert_eq!(op.matrices[0].to_dense(), vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(op.matrices[1].to_dense(), vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(op.fano_index, Some(2));
    }

    #[test]
    fn grassmannian_fano_index() {
        let op = homogeneous_operator(Family::A, 4, 2).unwrap();
        assert_eq!(op.fano_index, Some(5));
        assert_eq!(op.size(), 10);
        assert_eq!(op.mu(), 2);
    }

    #[test]
    fn gr24_rank() {
        let op = homogeneous_operator(Family::A, 3, 2).unwrap();
        assert_eq!(classical_rank(&op), 4);
    }

    #[test]
    fn involution_gr24() {
        let d = rootsys::build_root_datum(CartanType::new(Family::A, 3).unwrap()).unwrap();
        let b = SchubertBasis::new(d, 2).unwrap();
        let inv = poincare_involution(&b).unwrap();
        assert_eq!(inv[0], b.len() - 1);
        assert_eq!(typea_partition(&b.elements[1], 2, 4), vec![1, 0]);
        assert_eq!(typea_partition(&b.elements[inv[1]], 2, 4), vec![2, 1]);
        for i in 0..b.len() {
            assert_eq!(inv[inv[i]], i);
        }
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_oracle_typea(2, 4, &[2, 2]).unwrap(), vec![(vec![1, 0], 1, 1)]);
        assert_eq!(pieri_oracle_typea(2, 4, &[]).unwrap(), vec![(vec![1, 0], 0, 1)]);
        assert_eq!(pieri_oracle_typea(3, 6, &[3, 3, 3]).unwrap(), vec![(vec![2, 2, 0], 1, 1)]);
        assert!(pieri_oracle_typea(2, 4, &[1, 2]).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let op = homogeneous_operator(Family::A, 4, 2).unwrap();
        let back = QHOperator::from_text(&op.to_text()).unwrap();
        assert_eq!(back, op);
        assert_eq!(back.hash(), op.hash());
    }
}
