//! Reference constant tables, embedded as data, and the comparison of
//! computed constants against them.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::apery::{strain_compare, Normalization};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::real::{bits_for_digits, Real};
use crate::zetaid::{identify, monomial_basis, Identification, IdentifyOptions, ZetaPolynomial};

use super::cache::OperatorCache;
use super::record::{run_compute, ComputeOptions, Computation, Constant, ModeChoice};
use super::spec::VarietySpec;

pub const TABLES: [&str; 8] = ["gr2", "gr3", "gr4plus", "B", "C", "D", "EFG", "products"];

/// `table | variety | μ | entries | options`. Entries are separated by `;`:
/// `0_k` is a vanishing constant of weight `k`, a bare `0` a vanishing one of
/// unstated weight, `±(…)` allows either sign and `...` marks a row that
/// lists only some of its constants.
const DATA: &str = "
gr2 | Gr(2,4) | 2 | 0_2
gr2 | Gr(2,5) | 2 | ζ(2)
gr2 | Gr(2,6) | 3 | 2ζ(2); 0_4
gr2 | Gr(2,7) | 3 | 3ζ(2); 27/4 ζ(4)
gr2 | Gr(2,8) | 4 | 4ζ(2); 16ζ(4); 0_6
gr2 | Gr(2,9) | 4 | 5ζ(2); 111/4 ζ(4); 675/16 ζ(6)
gr2 | Gr(2,10) | 5 | 6ζ(2); 42ζ(4); 108ζ(6); 0_8
gr2 | Gr(2,11) | 5 | 7ζ(2); 235/4 ζ(4); 3229/16 ζ(6); 18375/64 ζ(8)
gr2 | Gr(2,12) | 6 | 8ζ(2); 78ζ(4); 328ζ(6); 768ζ(8); ...
gr2 | Gr(2,13) | 6 | 9ζ(2); 399/4 ζ(4); 7855/16 ζ(6); 96111/64 ζ(8); ...
gr2 | Gr(2,14) | 7 | 10ζ(2); 124ζ(4); 695ζ(6); 7664/3 ζ(8); ...
gr2 | Gr(2,15) | 7 | 11ζ(2); 603/4 ζ(4); 15113/16 ζ(6); 768085/192 ζ(8); ...
gr3 | Gr(3,6) | 3 | 0_2; -6ζ(3)
gr3 | Gr(3,7) | 4 | ζ(2); -7ζ(3); -17/4 ζ(4); -49/2 ζ(3)^2 - 945/16 ζ(6)
gr3 | Gr(3,8) | 5 | 2ζ(2); -8ζ(3); 0_4; -8ζ(2)ζ(3) - 4ζ(5); -32ζ(3)^2 - 62ζ(6)
gr3 | Gr(3,9) | 8 | 3ζ(2); -9ζ(3); 27/4 ζ(4); -27/2 ζ(2)ζ(3) - 9/2 ζ(5); ±(81/2 ζ(3)^2 + 871/16 ζ(6)); ...
gr3 | Gr(3,10) | 10 | 4ζ(2); -10ζ(3); 16ζ(4); -20ζ(2)ζ(3) - 5ζ(5); ±(50ζ(3)^2 + 32ζ(6)); ...
gr3 | Gr(3,11) | 13 | 5ζ(2); -11ζ(3); 111/4 ζ(4); -55/2 ζ(2)ζ(3) - 11/2 ζ(5); -121/2 ζ(3)^2 + 155/16 ζ(6); -121/2 ζ(3)^2 + 65/16 ζ(6); ...
gr4plus | Gr(4,8) | 8 | 0_2; -8ζ(3); -6ζ(4); 0_4; 32ζ(3)^2 + 50ζ(6); 32ζ(3)^2 + 50ζ(6); 0_8
gr4plus | Gr(4,9) | 12 | ζ(2); -9ζ(3); 21/4 ζ(4); ζ(4); -9/2(ζ(2)ζ(3) + ζ(5)); 81/2 ζ(3)^2 + 627/16 ζ(6); 81/2 ζ(3)^2 + 309/16 ζ(6); ...
gr4plus | Gr(4,10) | 18 | 2ζ(2); -10ζ(3); -2ζ(4); 2ζ(4); -10ζ(2)ζ(3) - 5ζ(5); 50ζ(3)^2 + 31ζ(6); 50ζ(3)^2; 0_6; ...
gr4plus | Gr(4,11) | 24 | 3ζ(2); -11ζ(3); 15/4 ζ(4); 3ζ(4); -33/2 ζ(2)ζ(3) - 11/2 ζ(5); 121/2 ζ(3)^2 + 477/16 ζ(6); 121/2 ζ(3)^2 + 83/16 ζ(6); 27/16 ζ(6); ...
gr4plus | Gr(5,10) | 20 | 0_2; -10ζ(3); -6ζ(4); 0_4; 10ζ(5); -10ζ(5); ...
gr4plus | Gr(5,11) | 32 | ζ(2); -11ζ(3); -21/4 ζ(4); ζ(4); 11ζ(5) - 11ζ(2)ζ(3); -11ζ(5); ...
B | B(3,2) | 2 | -2ζ(2)
B | B(4,2) | 3 | ζ(2); -41/2 ζ(4)
B | B(4,3) | 3 | -4ζ(2); -4ζ(3)
B | B(4,4) | 2 | 2ζ(3)
B | B(5,2) | 4 | 3ζ(2); 3/2 ζ(4); -1191/8 ζ(6)
B | B(5,3) | 8 | 0_2; -8ζ(3); -24ζ(4); 20ζ(5); 64/3 ζ(3)^2 + 80/3 ζ(6); 32ζ(3)ζ(4) + 232/3 ζ(7); 256/21 ζ(3)^3 + 320/7 ζ(3)ζ(6) - 480/7 ζ(4)ζ(5) - 1000/21 ζ(9)
B | B(5,4) | 8 | -6ζ(2); -6ζ(3); -45ζ(4); 9ζ(2)ζ(3) + 21ζ(5); 15ζ(3)^2 + 1141/24 ζ(6); 56ζ(2)ζ(5) + 30ζ(3)ζ(4) + 52ζ(7); 266/5 ζ(3)^3 - 171/5 ζ(2)ζ(7) - 222/5 ζ(3)ζ(6) - 263/5 ζ(4)ζ(5) + 136/5 ζ(9)
B | B(5,5) | 3 | 4ζ(3); 20ζ(5)
B | B(6,2) | 5 | 5ζ(2); 87/4 ζ(4); -485/8 ζ(6); -35073/32 ζ(8)
B | B(6,3) | 12 | 2ζ(2); -6ζ(3); -12ζ(4); -12ζ(2)ζ(3) + 18ζ(5); -36ζ(3)^2 - 146ζ(6); 36ζ(3)^2 + 2ζ(6); 24ζ(2)ζ(5) + 24ζ(3)ζ(4) + 76ζ(7); (360ζ(3)^2ζ(2) - 1080ζ(3)ζ(5) + 1176ζ(8))/11; 803ζ(3)^3 - 528ζ(2)ζ(7) + 318ζ(3)ζ(6) - 244ζ(4)ζ(5) - 35ζ(9); 75ζ(3)^3 - 336ζ(2)ζ(7) - 395ζ(3)ζ(6) - 22ζ(4)ζ(5) - 70ζ(9); ...
B | B(6,4) | 18 | -ζ(2); -10ζ(3); -17/4 ζ(4); -14ζ(4); 5ζ(2)ζ(3) + 19ζ(5); 50ζ(3)^2 + 317ζ(6); -50ζ(3)^2 - 4135/8 ζ(6); ...
B | B(6,5) | 14 | -8ζ(2); -8ζ(3); -84ζ(4); 64ζ(2)ζ(3) + 16ζ(5); -64ζ(2)ζ(3); 80/3 ζ(3)^2 + 24ζ(6); 110ζ(2)ζ(5) + 49/2 ζ(3)ζ(4) + 101/2 ζ(7); ...
B | B(6,6) | 5 | 6ζ(3); 18ζ(5); -18ζ(3)^2 - 60ζ(6); 36ζ(3)^3 + 360ζ(3)ζ(6) + 332ζ(9)
B | B(7,2) | 6 | 7ζ(2); 211/4 ζ(4); 1733/8 ζ(6); -76699/96 ζ(8); -5368203/640 ζ(10)
B | B(7,7) | 8 | 8ζ(3); 16ζ(5); -30ζ(3)^2 - 60ζ(6); -112ζ(7); 256/3 ζ(3)^3 + 480ζ(3)ζ(6) + 992/3 ζ(9); ...
C | C(3,2) | 2 | 2ζ(2)
C | C(3,3) | 2 | 7/2 ζ(3)
C | C(4,2) | 3 | 4ζ(2); 16ζ(4)
C | C(4,3) | 4 | ζ(2); -9ζ(3); -9/2(ζ(2)ζ(3) + ζ(5))
C | C(4,4) | 2 | 4ζ(3)
C | C(5,2) | 4 | 6ζ(2); 42ζ(4); 108ζ(6)
C | C(5,3) | 8 | 3ζ(2); -11ζ(3); 27/4 ζ(4); -33/2 ζ(2)ζ(3) - 11/2 ζ(5); 242/3 ζ(3)^2 + 2383/48 ζ(6); -11ζ(2)ζ(5) - 99/4 ζ(3)ζ(4) - 11/3 ζ(7); 108ζ(3)^3 - 38ζ(2)ζ(7) + 309/4 ζ(3)ζ(6) - 41/4 ζ(4)ζ(5) + 36ζ(9)
C | C(5,4) | 8 | 0_2; -10ζ(3); 30ζ(4); -5ζ(5); 250/3 ζ(3)^2 + 175/3 ζ(6); -100/3 ζ(3)ζ(4) - 10/9 ζ(7); 2500/21 ζ(3)^3 + 250ζ(3)ζ(6) - 150/7 ζ(4)ζ(5) - 10/21 ζ(9)
C | C(5,5) | 3 | 9/2 ζ(3); -21/2 ζ(5)
C | C(6,2) | 5 | 8ζ(2); 78ζ(4); 328ζ(6); 768ζ(8)
C | C(6,3) | 12 | 5ζ(2); -13ζ(3); 111/4 ζ(4); -65/2 ζ(2)ζ(3) - 13/2 ζ(5); -169/2 ζ(3)^2 + 155/16 ζ(6); 169/2 ζ(3)^2 + 65/2 ζ(6); ...
C | C(6,6) | 4 | ζ(3); -11ζ(5); -25ζ(3)^2 - 15/2 ζ(6); 500/3 ζ(3)^3 + 150ζ(3)ζ(6) - 131/3 ζ(9)
C | C(7,2) | 6 | 10ζ(2); 124ζ(4); 695ζ(6); 7664/3 ζ(8); 5760ζ(10)
C | C(7,7) | 8 | 11/2 ζ(3); -23/2 ζ(5); -121/4 ζ(3)^2 - 15/2 ζ(6); 71/2 ζ(7); 1331/6 ζ(3)^3 + 165ζ(3)ζ(6) - 263/6 ζ(9); 781/12 ζ(3)ζ(7) - 529/12 ζ(5)^2 - 63/2 ζ(10); ...
D | D(4,2) | 4 | 0; 0; -24ζ(4)
D | D(5,2) | 5 | 2ζ(2); 0; -12ζ(4); -144ζ(6)
D | D(5,3) | 9 | -ζ(2); -ζ(2); -6ζ(3); 0_4; -45/2 ζ(4); 3ζ(2)ζ(3) + 21ζ(5); 0_5; 12ζ(3)^2 + 275/24 ζ(6)
D | D(5,4) | 2 | 2ζ(3)
D | D(6,2) | 6 | 4ζ(2); 10ζ(4); 10ζ(4); -124ζ(6); -960ζ(8)
D | D(6,3) | 14 | ζ(2); -5ζ(3); -5ζ(3); -41/2 ζ(4); 0; -5ζ(2)ζ(3) + 19ζ(5); 25/2 ζ(3)^2 + 953/16 ζ(6); 25/2 ζ(3)^2 - 937/16 ζ(6); 0; ...
D | D(6,5) | 3 | 4ζ(3); 20ζ(5)
D | D(7,2) | 7 | 6ζ(2); 36ζ(4); 0; 50ζ(6); -1072ζ(8); -6912ζ(10)
D | D(7,6) | 5 | 6ζ(3); 18ζ(5); -18ζ(3)^2 - 60ζ(6); 36ζ(3)^3 + 360ζ(3)ζ(6) + 332ζ(9)
EFG | E(6,6) | 3 | 6ζ(4); 0_8
EFG | E(6,2) | 6 | 0_3; 18ζ(4); 90ζ(6); 0_7; -3456ζ(10)
EFG | E(7,7) | 3 | -24ζ(5); 168ζ(9)
EFG | E(8,8) | 11 | 120ζ(6); -1512ζ(10); ... | runtime
EFG | F(4,1) | 2 | 21ζ(4)
EFG | F(4,3) | 8 | -4ζ(2); 0_3; -2ζ(4); -24ζ(5); -246ζ(6); 32ζ(2)ζ(5) + 60ζ(7); 2160ζ(2)ζ(7) - 144ζ(4)ζ(5)
EFG | F(4,4) | 2 | 6ζ(4)
products | P2xP2 | 3 | 0_1; 6ζ(2)
products | P2xP3 | 3 | 0_1; 14/3 ζ(2) | terms=800
products | P2xP3 O(1,1) | 3 | -C; (C^2 + 7ζ(2))/2
";

#[derive(Clone, Debug)]
pub struct Expected {
    pub text: String,
    pub poly: ZetaPolynomial,
    /// Stated weight; `None` for a bare `0`.
    pub weight: Option<usize>,
    pub either_sign: bool,
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub table: &'static str,
    pub variety: &'static str,
    pub mu: usize,
    pub entries: Vec<Expected>,
    /// The row lists only some of its constants.
    pub partial: bool,
    pub runtime_excluded: bool,
    /// Lower bound on the series length for slowly converging rows.
    pub min_terms: usize,
}

fn parse_expected(t: &str) -> Result<Expected> {
    let t = t.trim();
    if let Some(k) = t.strip_prefix("0_") {
        let w = k.parse().map_err(|_| Error::Parse(format!("bad zero entry {t}")))?;
        return Ok(Expected { text: t.into(), poly: ZetaPolynomial::zero(), weight: Some(w), either_sign: false });
    }
    if t == "0" {
        return Ok(Expected { text: t.into(), poly: ZetaPolynomial::zero(), weight: None, either_sign: false });
    }
    let (body, either_sign) = match t.strip_prefix('±') {
        Some(b) => (b, true),
        None => (t, false),
    };
    let poly = ZetaPolynomial::parse(body)?;
    let weight = poly.weight().map(|w| w as usize);
    if weight.is_none() {
        return Err(Error::Parse(format!("{t} is not homogeneous")));
    }
    Ok(Expected { text: t.into(), poly, weight, either_sign })
}

/// All embedded rows, in table order.
pub fn table_rows() -> Vec<TableRow> {
    DATA.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&'static str> = l.split('|').map(str::trim).collect();
            let mut entries = Vec::new();
            let mut partial = false;
            for e in f[3].split(';').map(str::trim) {
                if e == "..." {
                    partial = true;
                } else {
                    entries.push(parse_expected(e).expect("embedded table entry parses"));
                }
            }
            TableRow {
                table: f[0],
                variety: f[1],
                mu: f[2].parse().expect("embedded μ"),
                entries,
                partial,
                runtime_excluded: f.get(4).is_some_and(|o| o.contains("runtime")),
                min_terms: f
                    .get(4)
                    .and_then(|o| o.split_whitespace().find_map(|w| w.strip_prefix("terms=")))
                    .map_or(0, |n| n.parse().expect("embedded term count")),
            }
        })
        .collect()
}

pub fn rows_of(table: &str) -> Result<Vec<TableRow>> {
    if !TABLES.contains(&table) {
        return Err(Error::Config(format!("unknown table {table:?}; known: {}", TABLES.join(", "))));
    }
    Ok(table_rows().into_iter().filter(|r| r.table == table).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    Scale,
    Numeric,
    Mismatch,
    Missing,
}

impl Status {
    pub fn is_match(&self) -> bool {
        matches!(self, Status::Exact | Status::Scale | Status::Numeric)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub expected: String,
    pub weight: Option<usize>,
    pub status: Status,
    /// `computed / expected` for scale matches; `span` for a match only up to
    /// a change of basis within one weight.
    pub scale: Option<String>,
    pub computed: Option<String>,
    pub identified: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub table: String,
    pub variety: String,
    pub canonical: String,
    pub mu_expected: usize,
    pub mu_computed: Option<usize>,
    pub entries: Vec<EntryReport>,
    /// Computed constants not paired with any listed entry.
    pub unlisted: Vec<(usize, String)>,
    pub partial: bool,
    pub excluded: Option<String>,
    pub error: Option<String>,
    pub seconds: f64,
}

impl RowReport {
    pub fn mu_matches(&self) -> bool {
        self.mu_computed == Some(self.mu_expected)
    }

    /// No listed entry failed to match.
    pub fn passed(&self) -> bool {
        self.excluded.is_some() || (self.error.is_none() && self.entries.iter().all(|e| e.status.is_match()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub description: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproduceReport {
    pub table: String,
    pub terms: usize,
    pub precision: u32,
    pub rows: Vec<RowReport>,
    pub cross_checks: Vec<CrossCheck>,
}

impl ReproduceReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed()) && self.cross_checks.iter().all(|c| c.passed)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("## {}\n\n| variety | μ | entry | status | computed |\n|---|---|---|---|---|\n", self.table);
        for r in &self.rows {
            let mu = match r.mu_computed {
                Some(m) if m == r.mu_expected => m.to_string(),
                Some(m) => format!("{m} (table {})", r.mu_expected),
                None => format!("? (table {})", r.mu_expected),
            };
            if let Some(x) = &r.excluded {
                s.push_str(&format!("| {} | {mu} | | excluded: {x} | |\n", r.variety));
                continue;
            }
            if let Some(e) = &r.error {
                s.push_str(&format!("| {} | {mu} | | error: {e} | |\n", r.variety));
                continue;
            }
            for (i, e) in r.entries.iter().enumerate() {
                let name = if i == 0 { r.variety.as_str() } else { "" };
                let m = if i == 0 { mu.as_str() } else { "" };
                let status = match (&e.status, &e.scale) {
                    (Status::Scale, Some(c)) => format!("scale {c}"),
                    (st, _) => format!("{st:?}").to_lowercase(),
                };
                let shown = e.identified.clone().or_else(|| e.computed.clone()).unwrap_or_default();
                s.push_str(&format!("| {name} | {m} | {} | {status} | {shown} |\n", e.expected));
            }
            for (w, v) in &r.unlisted {
                s.push_str(&format!("| | | (weight {w}) | unlisted | {v} |\n"));
            }
        }
        for c in &self.cross_checks {
            s.push_str(&format!("\n- {}: {} ({})", c.description, if c.passed { "ok" } else { "FAILED" }, c.detail));
        }
        s.push('\n');
        s
    }
}

fn ten_pow_neg(digits: u32, prec: u32) -> Real {
    let bits = (digits as f64 * std::f64::consts::LOG2_10) as i64;
    Real::one(prec).ldexp(-bits)
}

/// `p = c e` for a nonzero rational `c`.
fn proportional(p: &ZetaPolynomial, e: &ZetaPolynomial, weight: u32, euler: bool) -> Option<BigRational> {
    let basis = monomial_basis(weight, euler);
    let a = p.coefficients(&basis)?;
    let b = e.coefficients(&basis)?;
    let mut c: Option<BigRational> = None;
    for (x, y) in a.iter().zip(&b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => {}
            (false, false) => {
                let r = x / y;
                if c.as_ref().is_some_and(|c| c != &r) {
                    return None;
                }
                c = Some(r);
            }
            _ => return None,
        }
    }
    c
}

fn integer_row(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
    v.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

/// Whether `p` lies in the rational span of `es`.
fn in_span(p: &ZetaPolynomial, es: &[&ZetaPolynomial], weight: u32, euler: bool) -> bool {
    let basis = monomial_basis(weight, euler);
    let Some(pv) = p.coefficients(&basis) else { return false };
    let rows: Option<Vec<Vec<BigInt>>> = es.iter().map(|e| e.coefficients(&basis).map(|v| integer_row(&v))).collect();
    let Some(mut rows) = rows else { return false };
    let r0 = rank(rows.clone(), basis.len());
    rows.push(integer_row(&pv));
    rank(rows, basis.len()) == r0
}

/// Some nontrivial combination of `ps` vanishes.
fn dependent(ps: &[&ZetaPolynomial], weight: u32, euler: bool) -> bool {
    (0..ps.len()).any(|i| {
        let others: Vec<&ZetaPolynomial> = ps.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| *p).collect();
        ps[i].is_zero() || in_span(ps[i], &others, weight, euler)
    })
}

struct Verdict {
    status: Status,
    scale: Option<String>,
}

fn compare(c: &Constant, e: &Expected, precision: u32, euler: bool) -> Verdict {
    let plain = |status| Verdict { status, scale: None };
    let digits = c.estimate.accurate_digits().min(precision).saturating_sub(3).max(6);
    let prec = bits_for_digits(precision + 20);
    let tol = ten_pow_neg(digits, prec);
    let v = c.value().with_prec(prec);
    if e.poly.is_zero() {
        return plain(if c.is_zero() || v.abs().cmp_abs(&tol).is_le() { Status::Exact } else { Status::Mismatch });
    }
    let w = c.weight() as u32;
    if let Some(p) = &c.identification {
        let neg = e.poly.scale(&-BigRational::one());
        if p == &e.poly || (e.either_sign && p == &neg) {
            return plain(Status::Exact);
        }
        if let Some(r) = proportional(p, &e.poly, w, euler) {
            return Verdict { status: Status::Scale, scale: Some(r.to_string()) };
        }
        if p.is_zero() {
            return plain(Status::Mismatch);
        }
    }
    let ev = e.poly.eval(precision + 20);
    let scale_tol = &tol * &larger_abs(&Real::one(prec), &ev);
    let close = |x: &Real| (&v - x).abs().cmp_abs(&scale_tol).is_le();
    if c.identification.is_none() && (close(&ev) || (e.either_sign && close(&-&ev))) {
        return plain(Status::Numeric);
    }
    if v.is_zero() {
        return plain(Status::Mismatch);
    }
    let ratio = &v / &ev;
    let id_digits = c.id_digits.min(30);
    if id_digits >= 12 {
        let o = IdentifyOptions { digits: id_digits, max_height: 10_000, ..IdentifyOptions::default() };
        if let Identification::Identified { poly, .. } = identify(&ratio, 0, &o) {
            if !poly.is_zero() {
                return Verdict { status: Status::Scale, scale: Some(poly.internal_string()) };
            }
        }
    }
    plain(Status::Mismatch)
}

fn larger_abs(a: &Real, b: &Real) -> Real {
    if a.cmp_abs(b).is_ge() {
        a.abs()
    } else {
        b.abs()
    }
}

/// Pairs listed entries with computed constants of the same weight, exact
/// matches first.
pub fn match_row(row: &TableRow, comp: &Computation, precision: u32) -> (Vec<EntryReport>, Vec<(usize, String)>) {
    let euler = comp.spec.needs_euler();
    let consts = &comp.constants;
    let mut used = vec![false; consts.len()];
    let mut verdicts: Vec<Option<(usize, Verdict)>> = (0..row.entries.len()).map(|_| None).collect();
    let fits = |e: &Expected, c: &Constant| e.weight.is_none_or(|w| w == c.weight());
    // Bare zeros carry no weight, so they go after every labeled entry.
    let mut order: Vec<usize> = (0..row.entries.len()).collect();
    order.sort_by_key(|&i| row.entries[i].weight.is_none());
    for pass in 0..2 {
        for &i in &order {
            let e = &row.entries[i];
            if verdicts[i].is_some() || (pass == 0 && e.weight.is_none()) {
                continue;
            }
            let mut best: Option<(usize, Verdict)> = None;
            for (j, c) in consts.iter().enumerate() {
                if used[j] || !fits(e, c) {
                    continue;
                }
                let v = compare(c, e, precision, euler);
                if pass == 0 && v.status != Status::Exact {
                    continue;
                }
                if best.as_ref().is_none_or(|b| v.status < b.1.status) {
                    best = Some((j, v));
                }
            }
            if let Some((j, v)) = best {
                used[j] = true;
                verdicts[i] = Some((j, v));
            }
        }
    }
    // Where one weight carries several classes the listed constants depend on
    // the basis chosen there. An entry is accepted if the computed constants
    // of that weight can produce it.
    let slot = |w: usize| -> Option<Vec<&ZetaPolynomial>> {
        consts.iter().filter(|c| c.weight() == w).map(|c| c.identification.as_ref()).collect()
    };
    let span_verdict = |scale: String| Verdict { status: Status::Scale, scale: Some(scale) };
    for (i, e) in row.entries.iter().enumerate() {
        let Some(w) = e.weight.or_else(|| verdicts[i].as_ref().map(|(j, _)| consts[*j].weight())) else { continue };
        let Some(polys) = slot(w) else { continue };
        if polys.len() < 2 {
            continue;
        }
        let attainable =
            if e.poly.is_zero() { dependent(&polys, w as u32, euler) } else { in_span(&e.poly, &polys, w as u32, euler) };
        match &mut verdicts[i] {
            Some((_, v)) if v.status == Status::Mismatch && attainable => *v = span_verdict("span".into()),
            _ => {}
        }
    }
    // Listed constants spanning the computed one.
    for (i, e) in row.entries.iter().enumerate() {
        let Some((j, v)) = &mut verdicts[i] else { continue };
        if v.status != Status::Mismatch {
            continue;
        }
        let (Some(w), Some(p)) = (e.weight, consts[*j].identification.as_ref()) else { continue };
        let peers: Vec<&ZetaPolynomial> =
            row.entries.iter().filter(|x| x.weight == Some(w) && !x.poly.is_zero()).map(|x| &x.poly).collect();
        if peers.len() > 1 && !p.is_zero() && in_span(p, &peers, w as u32, euler) {
            *v = span_verdict("span".into());
        }
    }
    // A labeled zero with no class left at its weight: look for a leftover
    // class in a weight where some basis change yields zero, and report the
    // label it would need.
    for (i, e) in row.entries.iter().enumerate() {
        if verdicts[i].is_some() || !e.poly.is_zero() {
            continue;
        }
        let found = consts.iter().enumerate().find(|(j, c)| {
            !used[*j]
                && slot(c.weight()).is_some_and(|p| p.len() > 1 && dependent(&p, c.weight() as u32, euler))
        });
        if let Some((j, c)) = found {
            used[j] = true;
            verdicts[i] = Some((j, span_verdict(format!("span, read as 0_{}", c.weight()))));
        }
    }
    let entries = row
        .entries
        .iter()
        .zip(verdicts)
        .map(|(e, v)| match v {
            Some((j, v)) => EntryReport {
                expected: e.text.clone(),
                weight: e.weight,
                status: v.status,
                scale: v.scale,
                computed: Some(consts[j].value().to_decimal(20)),
                identified: consts[j].identification.as_ref().map(|p| p.display_form()),
            },
            None => EntryReport {
                expected: e.text.clone(),
                weight: e.weight,
                status: Status::Missing,
                scale: None,
                computed: None,
                identified: None,
            },
        })
        .collect();
    let unlisted = consts
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(c, _)| {
            let shown = c.identification.as_ref().map(|p| p.display_form()).unwrap_or_else(|| c.value().to_decimal(20));
            (c.weight(), shown)
        })
        .collect();
    (entries, unlisted)
}

#[derive(Clone, Debug)]
pub struct ReproduceOptions {
    pub terms: usize,
    pub precision: u32,
    pub mode: ModeChoice,
    pub normalization: Normalization,
    /// Rows with a larger Schubert basis are skipped as too slow.
    pub max_basis: usize,
    pub include_runtime_excluded: bool,
    pub workers: usize,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        ReproduceOptions {
            terms: 200,
            precision: 40,
            mode: ModeChoice::Auto,
            normalization: Normalization::LefschetzChern,
            max_basis: 512,
            include_runtime_excluded: false,
            workers: 2,
        }
    }
}

fn run_row(row: &TableRow, o: &ReproduceOptions, cache: &OperatorCache) -> (RowReport, Option<Computation>) {
    let start = Instant::now();
    let mut report = RowReport {
        table: row.table.into(),
        variety: row.variety.into(),
        canonical: String::new(),
        mu_expected: row.mu,
        mu_computed: None,
        entries: Vec::new(),
        unlisted: Vec::new(),
        partial: row.partial,
        excluded: None,
        error: None,
        seconds: 0.0,
    };
    let spec = match VarietySpec::parse(row.variety) {
        Ok(s) => s,
        Err(e) => {
            report.error = Some(e.to_string());
            return (report, None);
        }
    };
    report.canonical = spec.canonical();
    let op = match cache.load_or_build(&spec) {
        Ok((op, _)) => op,
        Err(e) => {
            report.error = Some(e.to_string());
            return (report, None);
        }
    };
    report.mu_computed = Some(op.mu());
    if row.runtime_excluded && !o.include_runtime_excluded {
        report.excluded = Some("runtime".into());
        return (report, None);
    }
    if op.size() > o.max_basis {
        report.excluded = Some(format!("basis of {} exceeds {}", op.size(), o.max_basis));
        return (report, None);
    }
    let co = ComputeOptions { terms: o.terms.max(row.min_terms), precision: o.precision, mode: o.mode, normalization: o.normalization };
    match run_compute(row.variety, &spec, &co, cache) {
        Ok(comp) => {
            let (entries, unlisted) = match_row(row, &comp, o.precision);
            report.entries = entries;
            report.unlisted = unlisted;
            report.seconds = start.elapsed().as_secs_f64();
            (report, Some(comp))
        }
        Err(e) => {
            report.error = Some(e.to_string());
            (report, None)
        }
    }
}

fn computed<'a>(done: &'a [(RowReport, Option<Computation>)], name: &str) -> Option<&'a Computation> {
    done.iter().find(|(r, _)| r.variety == name).and_then(|(_, c)| c.as_ref())
}

/// `C(n,2)` against `Gr(2,2n)`: equal constants, the Grassmannian having one
/// more, vanishing, constant of top weight.
pub fn symplectic_strain(c: &Computation, gr: &Computation) -> CrossCheck {
    let x: Vec<_> = c.run.estimates.clone();
    let y: Vec<_> = gr.run.estimates.clone();
    let tol = ten_pow_neg(20, x.first().map(|e| e.value.prec()).unwrap_or(200));
    let r = strain_compare(&x, &y, &tol);
    let last_zero = r.y_only.len() == 1 && r.y_only[0].1.abs().cmp_abs(&tol).is_le();
    let signs_ok = r.matched.iter().all(|m| m.sign == 1);
    CrossCheck {
        description: format!("{} = {} except the last 0", c.spec, gr.spec),
        passed: r.x_only.is_empty() && last_zero && signs_ok,
        detail: format!(
            "{} matched, {} unmatched on the left, extra on the right: {:?}",
            r.matched.len(),
            r.x_only.len(),
            r.y_only.iter().map(|(w, v)| format!("w{w}={}", v.to_decimal(6))).collect::<Vec<_>>()
        ),
    }
}

/// Isomorphic varieties, e.g. `D(N,N−1)` and `B(N−1,N−1)`: equal constants up
/// to the sign of the seeds.
pub fn isomorphic_strain(a: &Computation, b: &Computation) -> CrossCheck {
    let tol = ten_pow_neg(20, a.run.estimates.first().map(|e| e.value.prec()).unwrap_or(200));
    let r = strain_compare(&a.run.estimates, &b.run.estimates, &tol);
    CrossCheck {
        description: format!("{} = {}", a.spec, b.spec),
        passed: r.full_match(),
        detail: format!("{} matched, signs {:?}", r.matched.len(), r.matched.iter().map(|m| m.sign).collect::<Vec<_>>()),
    }
}

pub fn run_reproduce(table: &str, o: &ReproduceOptions, cache: &OperatorCache) -> Result<ReproduceReport> {
    let rows = rows_of(table)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(o.workers.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let mut extra: Vec<TableRow> = Vec::new();
    if table == "C" {
        for n in [3, 4, 5] {
            extra.push(TableRow {
                table: "gr2",
                variety: ["Gr(2,6)", "Gr(2,8)", "Gr(2,10)"][n - 3],
                mu: n,
                entries: Vec::new(),
                partial: true,
                runtime_excluded: false,
                min_terms: 0,
            });
        }
    }
    let done: Vec<(RowReport, Option<Computation>)> =
        pool.install(|| rows.par_iter().chain(extra.par_iter()).map(|r| run_row(r, o, cache)).collect());
    let mut cross_checks = Vec::new();
    let pairs: Vec<(&str, &str, bool)> = match table {
        "C" => vec![("C(3,2)", "Gr(2,6)", true), ("C(4,2)", "Gr(2,8)", true), ("C(5,2)", "Gr(2,10)", true)],
        "D" => vec![("D(5,4)", "B(4,4)", false), ("D(6,5)", "B(5,5)", false)],
        _ => Vec::new(),
    };
    for (a, b, symplectic) in pairs {
        let Some(ca) = computed(&done, a) else { continue };
        if symplectic {
            if let Some(cb) = computed(&done, b) {
                cross_checks.push(symplectic_strain(ca, cb));
            }
        } else {
            let spec = VarietySpec::parse(b)?;
            let co = ComputeOptions { terms: o.terms, precision: o.precision, mode: o.mode, normalization: o.normalization };
            let cb = run_compute(b, &spec, &co, cache)?;
            cross_checks.push(isomorphic_strain(ca, &cb));
        }
    }
    let rows = done.into_iter().filter(|(r, _)| r.table == table).map(|(r, _)| r).collect();
    Ok(ReproduceReport { table: table.into(), terms: o.terms, precision: o.precision, rows, cross_checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_parse() {
        let rows = table_rows();
        assert_eq!(rows.len(), 72);
        for t in TABLES {
            assert!(rows.iter().any(|r| r.table == t), "{t}");
        }
        for r in &rows {
            if !r.partial {
                assert!(r.entries.len() < r.mu + 1, "{}", r.variety);
            }
            VarietySpec::parse(r.variety).unwrap();
        }
    }

    #[test]
    fn zero_entries_carry_weights() {
        let e = parse_expected("0_8").unwrap();
        assert_eq!(e.weight, Some(8));
        assert!(e.poly.is_zero());
        assert_eq!(parse_expected("0").unwrap().weight, None);
        let s = parse_expected("±(50ζ(3)^2 + 32ζ(6))").unwrap();
        assert!(s.either_sign);
        assert_eq!(s.weight, Some(6));
    }

    #[test]
    fn proportionality() {
        let a = ZetaPolynomial::parse("3ζ(2)").unwrap();
        let b = ZetaPolynomial::parse("6ζ(2)").unwrap();
        assert_eq!(proportional(&a, &b, 2, false), Some(BigRational::new(1.into(), 2.into())));
        let c = ZetaPolynomial::parse("ζ(3)^2 + ζ(6)").unwrap();
        let d = ZetaPolynomial::parse("ζ(3)^2").unwrap();
        assert_eq!(proportional(&c, &d, 6, false), None);
        let e = ZetaPolynomial::parse("ζ(6)").unwrap();
        assert!(in_span(&c, &[&d, &e], 6, false));
        assert!(!in_span(&c, &[&d], 6, false));
    }
}
