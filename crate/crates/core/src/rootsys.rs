//! Root systems, Weyl groups and minimal coset representatives.
//!
//! Roots are stored in the basis of simple roots together with the
//! symmetric bilinear form on that basis, so every root and coroot has
//! integer coordinates. Simple roots are numbered as in Bourbaki.
//!
//! Weyl group elements act on the full root list (positive roots first,
//! then their negatives) by permutation.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<CartanType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::Config(format!("no root system of type {family}{rank}")))
        }
    }

    /// `(x, y)` on simple roots, normalized so that short roots have norm 2.
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let mut link = |i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..n - 1 {
                    link(i, i + 1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    link(i, i + 1, -2);
                }
            }
            Family::C => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1);
                }
                link(n - 2, n - 1, -2);
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1);
                }
                link(n - 3, n - 1, -1);
            }
            Family::E => {
                link(0, 2, -1);
                link(1, 3, -1);
                for i in 2..n - 1 {
                    link(i, i + 1, -1);
                }
            }
            Family::F => {
                link(0, 1, -2);
                link(1, 2, -2);
                link(2, 3, -1);
            }
            Family::G => link(0, 1, -3),
        }
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = match (self.family, i) {
                (Family::A | Family::D | Family::E, _) => 2,
                (Family::B, i) if i + 1 < n => 4,
                (Family::B, _) => 2,
                (Family::C, i) if i + 1 < n => 2,
                (Family::C, _) => 4,
                (Family::F, 0 | 1) => 4,
                (Family::F, _) => 2,
                (Family::G, 0) => 2,
                (Family::G, _) => 6,
            };
        }
        g
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, n) => n * (n + 1) / 2,
            (Family::B | Family::C, n) => n * n,
            (Family::D, n) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
            (Family::F, _) => 24,
            (Family::G, _) => 6,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub cartan: CartanType,
    /// Bilinear form on the simple roots.
    pub gram: Vec<Vec<i64>>,
    /// `cartan_matrix[i][j] = <α_i, α_j^∨>`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// Matching coroots in simple-coroot coordinates.
    pub coroots: Vec<Vec<i64>>,
    /// Fundamental weights in simple-root coordinates.
    pub fundamental_weights: Vec<Vec<Rational64>>,
    /// Half sum of positive roots in simple-root coordinates.
    pub rho: Vec<Rational64>,
    index: HashMap<Vec<i64>, usize>,
    simple_perms: Vec<Vec<u16>>,
    /// For each positive root `β`, a word `w` and a simple root `α_j`
    /// with `β = w(α_j)`.
    root_words: Vec<(Vec<u8>, usize)>,
    reflection_perms: Vec<Vec<u16>>,
    simple_index: Vec<usize>,
}

fn pair(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..x.len() {
        if x[i] == 0 {
            continue;
        }
        for j in 0..y.len() {
            s += x[i] * g[i][j] * y[j];
        }
    }
    s
}

pub fn build_root_datum(t: CartanType) -> Result<RootDatum> {
    let t = CartanType::new(t.family, t.rank)?;
    let n = t.rank;
    let gram = t.gram();
    let cartan_matrix: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect()).collect();

    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut roots: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut words: Vec<(Vec<u8>, usize)> = (0..n).map(|i| (Vec::new(), i)).collect();
    let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut frontier: Vec<usize> = (0..n).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &k in &frontier {
            for i in 0..n {
                let beta = roots[k].clone();
                let c = 2 * pair(&gram, &beta, &unit(i)) / gram[i][i];
                if c >= 0 {
                    continue;
                }
                let mut img = beta;
                img[i] -= c;
                if seen.insert(img.clone()) {
                    let mut w = vec![i as u8];
                    w.extend(&words[k].0);
                    words.push((w, words[k].1));
                    roots.push(img);
                    next.push(roots.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| {
        let ha: i64 = roots[a].iter().sum();
        let hb: i64 = roots[b].iter().sum();
        ha.cmp(&hb).then_with(|| roots[b].cmp(&roots[a]))
    });
    let positive_roots: Vec<Vec<i64>> = order.iter().map(|&i| roots[i].clone()).collect();
    let root_words: Vec<(Vec<u8>, usize)> = order.iter().map(|&i| words[i].clone()).collect();
    if positive_roots.len() != t.positive_root_count() {
        return Err(Error::Internal(format!("root closure of {t} gave {} roots", positive_roots.len())));
    }
    let m = positive_roots.len();

    let coroots: Vec<Vec<i64>> = positive_roots
        .iter()
        .map(|r| {
            let nr = pair(&gram, r, r);
            (0..n).map(|i| r[i] * gram[i][i] / nr).collect()
        })
        .collect();

    let mut index = HashMap::new();
    for (k, r) in positive_roots.iter().enumerate() {
        index.insert(r.clone(), k);
        index.insert(r.iter().map(|x| -x).collect::<Vec<_>>(), k + m);
    }
    let all_roots = |k: usize| -> Vec<i64> {
        if k < m {
            positive_roots[k].clone()
        } else {
            positive_roots[k - m].iter().map(|x| -x).collect()
        }
    };
    let reflect_vec = |v: &[i64], beta: &[i64]| -> Vec<i64> {
        let c = 2 * pair(&gram, v, beta) / pair(&gram, beta, beta);
        v.iter().zip(beta).map(|(x, b)| x - c * b).collect()
    };
    let perm_of = |beta: &[i64]| -> Vec<u16> {
        (0..2 * m).map(|k| index[&reflect_vec(&all_roots(k), beta)] as u16).collect()
    };
    let simple_perms: Vec<Vec<u16>> = (0..n).map(|i| perm_of(&unit(i))).collect();

    let simple_index: Vec<usize> = (0..n).map(|i| index[&unit(i)]).collect();
    let inv = invert_rational(&cartan_matrix);
    // α_i = Σ_k a_ik ω_k, so ω_k = Σ_i (A^-1)_ki α_i.
    let fundamental_weights: Vec<Vec<Rational64>> = (0..n).map(|k| (0..n).map(|i| inv[k][i]).collect()).collect();
    let mut rho = vec![Rational64::zero(); n];
    for r in &positive_roots {
        for i in 0..n {
            rho[i] += Rational64::new(r[i], 2);
        }
    }

    let mut d = RootDatum {
        cartan: t,
        gram,
        cartan_matrix,
        positive_roots,
        coroots,
        fundamental_weights,
        rho,
        index,
        simple_perms,
        root_words,
        reflection_perms: Vec::new(),
        simple_index,
    };
    // s_β = w s_j w^-1 for β = w(α_j).
    let refl: Vec<Vec<u16>> = (0..m)
        .map(|k| {
            let (w, j) = &d.root_words[k];
            let wp = d.word_perm(w);
            let winv = invert_perm(&wp);
            compose(&compose(&wp, &d.simple_perms[*j]), &winv)
        })
        .collect();
    d.reflection_perms = refl;
    Ok(d)
}

fn invert_rational(a: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| if j < n { Rational64::from_integer(a[i][j]) } else if j - n == i { Rational64::one() } else { Rational64::zero() })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("Cartan matrix is invertible");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c];
                let pr = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(pr) {
                    *x -= f * y;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// `(p ∘ q)[k] = p[q[k]]`.
pub fn compose(p: &[u16], q: &[u16]) -> Vec<u16> {
    q.iter().map(|&k| p[k as usize]).collect()
}

pub fn invert_perm(p: &[u16]) -> Vec<u16> {
    let mut inv = vec![0u16; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v as usize] = k as u16;
    }
    inv
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Index of a root given in simple-root coordinates; negatives are offset
    /// by the number of positive roots.
    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn root(&self, k: usize) -> Vec<i64> {
        let m = self.num_positive();
        if k < m {
            self.positive_roots[k].clone()
        } else {
            self.positive_roots[k - m].iter().map(|x| -x).collect()
        }
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        pair(&self.gram, x, y)
    }

    /// `<v, α^∨>` for an integral vector `v`.
    pub fn coroot_pairing(&self, v: &[i64], alpha_index: usize) -> i64 {
        let a = &self.positive_roots[alpha_index];
        2 * self.inner(v, a) / self.inner(a, a)
    }

    /// `<w, α^∨>` for a rational weight in simple-root coordinates.
    pub fn weight_pairing(&self, w: &[Rational64], alpha_index: usize) -> Rational64 {
        let a = &self.positive_roots[alpha_index];
        let mut s = Rational64::zero();
        for i in 0..w.len() {
            for j in 0..a.len() {
                s += w[i] * Rational64::from_integer(self.gram[i][j] * a[j]);
            }
        }
        s * Rational64::new(2, self.inner(a, a))
    }

    /// `v - <v, α^∨> α`.
    pub fn reflect(&self, alpha_index: usize, v: &[i64]) -> Vec<i64> {
        let a = &self.positive_roots[alpha_index];
        let c = self.coroot_pairing(v, alpha_index);
        v.iter().zip(a).map(|(x, y)| x - c * y).collect()
    }

    pub fn simple_perm(&self, i: usize) -> &[u16] {
        &self.simple_perms[i]
    }

    /// Permutation of the reflection `s_α` for a positive root.
    pub fn reflection_perm(&self, alpha_index: usize) -> &[u16] {
        &self.reflection_perms[alpha_index]
    }

    pub fn word_perm(&self, word: &[u8]) -> Vec<u16> {
        let mut p: Vec<u16> = (0..2 * self.num_positive() as u16).collect();
        for &i in word {
            p = compose(&p, &self.simple_perms[i as usize]);
        }
        p
    }

    pub fn identity(&self) -> WeylElem {
        WeylElem { word: Vec::new(), perm: (0..2 * self.num_positive() as u16).collect() }
    }

    /// The element with the given action, with its canonical reduced word.
    pub fn elem_from_perm(&self, perm: Vec<u16>) -> WeylElem {
        let m = self.num_positive();
        let mut word = Vec::new();
        let mut p = perm.clone();
        // Peel off the smallest right descent until the identity remains.
        loop {
            let Some(i) = (0..self.rank()).find(|&i| p[i_simple(self, i)] as usize >= m) else { break };
            word.push(i as u8);
            p = compose(&p, &self.simple_perms[i]);
        }
        word.reverse();
        WeylElem { word, perm }
    }

    pub fn elem_from_word(&self, word: &[u8]) -> WeylElem {
        self.elem_from_perm(self.word_perm(word))
    }

    pub fn mul(&self, a: &WeylElem, b: &WeylElem) -> WeylElem {
        self.elem_from_perm(compose(&a.perm, &b.perm))
    }

    /// Longest element of the parabolic subgroup generated by `gens`.
    pub fn longest_in(&self, gens: &[usize]) -> WeylElem {
        let m = self.num_positive();
        let mut p: Vec<u16> = (0..2 * m as u16).collect();
        while let Some(&i) = gens.iter().find(|&&i| (p[i_simple(self, i)] as usize) < m) {
            p = compose(&p, &self.simple_perms[i]);
        }
        self.elem_from_perm(p)
    }

    pub fn longest(&self) -> WeylElem {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.longest_in(&all)
    }
}

/// Position of the simple root `α_i` in the root list.
fn i_simple(d: &RootDatum, i: usize) -> usize {
    d.simple_index[i]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElem {
    /// Canonical reduced word; the element is `s_word[0] ... s_word[last]`.
    pub word: Vec<u8>,
    /// Image of each root index.
    pub perm: Vec<u16>,
}

impl WeylElem {
    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let m = self.perm.len() / 2;
        self.perm[..m].iter().filter(|&&k| k as usize >= m).count()
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "e".to_string();
        }
        self.word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("")
    }
}

pub fn weyl_length(e: &WeylElem) -> usize {
    e.length()
}

/// Minimal coset representatives `W^P` for the maximal parabolic that
/// omits `node` (numbered from 1), sorted by length and then by word.
pub fn coset_min_reps(d: &RootDatum, node: usize) -> Result<Vec<WeylElem>> {
    let n = d.rank();
    if node == 0 || node > n {
        return Err(Error::Config(format!("node {node} out of range for {}", d.cartan)));
    }
    let m = d.num_positive();
    let others: Vec<usize> = (0..n).filter(|&j| j != node - 1).collect();
    let simple_idx: Vec<usize> = (0..n).map(|i| i_simple(d, i)).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let id = d.identity();
    seen.insert(id.perm.clone());
    let mut layer = vec![id.perm.clone()];
    let mut all = vec![id.perm];
    let mut len = 0usize;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for p in &layer {
            for i in 0..n {
                let q = compose(&d.simple_perms[i], p);
                let l = q[..m].iter().filter(|&&k| k as usize >= m).count();
                if l != len + 1 {
                    continue;
                }
                if others.iter().any(|&j| q[simple_idx[j]] as usize >= m) {
                    continue;
                }
                if seen.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
        len += 1;
    }
    let mut elems: Vec<WeylElem> = all.into_iter().map(|p| d.elem_from_perm(p)).collect();
    elems.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.word.cmp(&b.word)));
    Ok(elems)
}

/// Projection `x ↦ x_min` of `x W_P` onto its minimal representative.
pub fn project_min(d: &RootDatum, node: usize, perm: &[u16]) -> Vec<u16> {
    let m = d.num_positive();
    let mut p = perm.to_vec();
    loop {
        let Some(j) = (0..d.rank()).find(|&j| j != node - 1 && p[i_simple(d, j)] as usize >= m) else {
            return p;
        };
        p = compose(&p, &d.simple_perms[j]);
    }
}

pub fn perm_length(p: &[u16]) -> usize {
    let m = p.len() / 2;
    p[..m].iter().filter(|&&k| k as usize >= m).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(f: Family, n: usize) -> RootDatum {
        build_root_datum(CartanType::new(f, n).unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (f, n) in [
            (Family::A, 1),
            (Family::A, 5),
            (Family::B, 4),
            (Family::C, 3),
            (Family::D, 5),
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ] {
            let d = datum(f, n);
            assert_eq!(d.num_positive(), d.cartan.positive_root_count());
        }
    }

    #[test]
    fn inadmissible_types() {
        assert!(CartanType::new(Family::D, 3).is_err());
        assert!(CartanType::new(Family::E, 5).is_err());
        assert!(CartanType::new(Family::G, 3).is_err());
    }

    #[test]
    fn g2_cartan() {
        let d = datum(Family::G, 2);
        assert_eq!(d.cartan_matrix[0][1].min(d.cartan_matrix[1][0]), -3);
        assert_eq!(d.cartan_matrix[0][1].max(d.cartan_matrix[1][0]), -1);
    }

    #[test]
    fn reflections() {
        let d = datum(Family::A, 2);
        assert_eq!(d.reflect(0, &[0, 1]), vec![1, 1]);
        let v = vec![3, -2];
        assert_eq!(d.reflect(2, &d.reflect(2, &v)), v);
    }

    #[test]
    fn pairings() {
        let d = datum(Family::A, 2);
        let k = d.root_index(&[1, 1]).unwrap();
        assert_eq!(d.weight_pairing(&d.fundamental_weights[0], k), Rational64::one());
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1 } else { 0 };
                assert_eq!(d.weight_pairing(&d.fundamental_weights[i], j), Rational64::from_integer(expect));
            }
        }
    }

    #[test]
    fn lengths() {
        let d = datum(Family::A, 2);
        assert_eq!(d.identity().length(), 0);
        assert_eq!(d.elem_from_word(&[0]).length(), 1);
        assert_eq!(d.longest().length(), 3);
    }

    #[test]
    fn reflection_by_conjugation_matches_vector_reflection() {
        for (f, n) in [(Family::B, 3), (Family::G, 2), (Family::F, 4), (Family::E, 6)] {
            let d = datum(f, n);
            for a in 0..d.num_positive() {
                for k in 0..2 * d.num_positive() {
                    let img = d.reflect(a, &d.root(k));
                    assert_eq!(d.reflection_perm(a)[k] as usize, d.root_index(&img).unwrap());
                }
            }
        }
    }

    #[test]
    fn quotient_sizes() {
        let d = datum(Family::A, 4);
        let q = coset_min_reps(&d, 2).unwrap();
        let mut prof = vec![0; 7];
        for u in &q {
            prof[u.length()] += 1;
        }
        assert_eq!(prof, vec![1, 1, 2, 2, 2, 1, 1]);
        assert_eq!(coset_min_reps(&datum(Family::A, 1), 1).unwrap().len(), 2);
        assert_eq!(coset_min_reps(&datum(Family::D, 5), 5).unwrap().len(), 16);
    }
}
