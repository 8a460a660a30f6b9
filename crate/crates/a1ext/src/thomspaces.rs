//! A(1)-module structure of Thom spectra built from Stiefel-Whitney calculus.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modcat::{self, parse_call, GradedA1Module};
use crate::steenrod::binom_mod2;

/// Polynomial over F2 in graded variables; `weights[i]` is the degree of variable `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SwPolynomial {
    pub weights: Vec<u32>,
    pub terms: BTreeSet<Vec<u32>>,
}

impl SwPolynomial {
    pub fn zero(weights: &[u32]) -> Self {
        SwPolynomial {
            weights: weights.to_vec(),
            terms: BTreeSet::new(),
        }
    }

    pub fn one(weights: &[u32]) -> Self {
        Self::monomial(weights, vec![0; weights.len()])
    }

    pub fn monomial(weights: &[u32], exps: Vec<u32>) -> Self {
        let mut p = Self::zero(weights);
        p.terms.insert(exps);
        p
    }

    pub fn var(weights: &[u32], i: usize) -> Self {
        let mut e = vec![0; weights.len()];
        e[i] = 1;
        Self::monomial(weights, e)
    }

    /// Stiefel-Whitney variables `w_1..w_n`.
    pub fn sw_weights(n: usize) -> Vec<u32> {
        (1..=n as u32).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_degree(&self, e: &[u32]) -> u32 {
        e.iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        SwPolynomial {
            weights: self.weights.clone(),
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        }
    }

    pub fn add_term(&mut self, e: Vec<u32>) {
        if !self.terms.remove(&e) {
            self.terms.insert(e);
        }
    }

    /// Product, dropping terms of degree above `max_deg`.
    pub fn mul_trunc(&self, other: &Self, max_deg: u32) -> Self {
        let mut out = Self::zero(&self.weights);
        for a in &self.terms {
            for b in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if self.term_degree(&e) <= max_deg {
                    out.add_term(e);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_trunc(other, u32::MAX)
    }

    pub fn part(&self, d: u32) -> Self {
        SwPolynomial {
            weights: self.weights.clone(),
            terms: self
                .terms
                .iter()
                .filter(|e| self.term_degree(e) == d)
                .cloned()
                .collect(),
        }
    }

    pub fn truncate(&self, max_deg: u32) -> Self {
        SwPolynomial {
            weights: self.weights.clone(),
            terms: self
                .terms
                .iter()
                .filter(|e| self.term_degree(e) <= max_deg)
                .cloned()
                .collect(),
        }
    }

    /// Kills every term in which variable `i` has exponent above `max`.
    pub fn cap_exponent(&self, max: u32) -> Self {
        SwPolynomial {
            weights: self.weights.clone(),
            terms: self
                .terms
                .iter()
                .filter(|e| e.iter().all(|&x| x <= max))
                .cloned()
                .collect(),
        }
    }

    /// Inverse of a series with constant term 1, through degree `max_deg`.
    pub fn inverse_trunc(&self, max_deg: u32) -> Self {
        let one = Self::one(&self.weights);
        assert!(
            self.terms.contains(&vec![0; self.weights.len()]),
            "constant term must be 1"
        );
        let x = self.add(&one);
        // 1/(1+x) = sum x^j, and x has no constant term.
        let mut out = one.clone();
        let mut pow = one;
        for _ in 0..max_deg {
            pow = pow.mul_trunc(&x, max_deg);
            if pow.is_zero() {
                break;
            }
            out = out.add(&pow);
        }
        out
    }

    pub fn pow_trunc(&self, k: u32, max_deg: u32) -> Self {
        let mut out = Self::one(&self.weights);
        for _ in 0..k {
            out = out.mul_trunc(self, max_deg);
        }
        out
    }

    /// True when the polynomial is `1` modulo terms of degree above `max_deg`.
    pub fn is_one_through(&self, max_deg: u32) -> bool {
        self.truncate(max_deg) == Self::one(&self.weights)
    }

    fn display_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<(u32, String)> = self
            .terms
            .iter()
            .map(|e| {
                let m = monomial_name(e, names);
                (self.term_degree(e), if m.is_empty() { "1".into() } else { m })
            })
            .collect();
        parts.sort();
        parts.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(" + ")
    }
}

fn monomial_name(e: &[u32], names: &dyn Fn(usize) -> String) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| if x == 1 { names(i) } else { format!("{}^{x}", names(i)) })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for SwPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all_one = self.weights.iter().all(|&w| w == 1) && self.weights.len() > 1;
        let s = if all_one {
            self.display_with(&|i| format!("a{}", i + 1))
        } else {
            self.display_with(&|i| format!("w{}", i + 1))
        };
        write!(f, "{s}")
    }
}

/// Wu formula `Sq^i w_j = sum_k C(j-i+k-1, k) w_{i-k} w_{j+k}` in `w_1..w_n`.
fn wu_on_generator(i: u32, j: u32, n: usize) -> SwPolynomial {
    let weights = SwPolynomial::sw_weights(n);
    let mut out = SwPolynomial::zero(&weights);
    if i > j {
        return out;
    }
    if i == 0 {
        return SwPolynomial::var(&weights, j as usize - 1);
    }
    for k in 0..=i {
        if !binom_mod2(j as i64 - i as i64 + k as i64 - 1, k as i64) {
            continue;
        }
        let (a, b) = (i - k, j + k);
        if b as usize > n {
            continue;
        }
        let mut e = vec![0; n];
        e[b as usize - 1] += 1;
        if a > 0 {
            e[a as usize - 1] += 1;
        }
        out.add_term(e);
    }
    out
}

/// Total square of `w_j` through degree `j + max_i`.
fn total_square_generator(j: u32, n: usize, max_i: u32) -> SwPolynomial {
    (0..=max_i.min(j)).fold(SwPolynomial::zero(&SwPolynomial::sw_weights(n)), |acc, i| {
        acc.add(&wu_on_generator(i, j, n))
    })
}

/// `Sq^i p` for a polynomial in `w_1..w_n` (Wu formula plus Cartan).
pub fn wu_sq(i: u32, p: &SwPolynomial) -> SwPolynomial {
    let n = p.weights.len();
    let mut out = SwPolynomial::zero(&p.weights);
    for e in &p.terms {
        let d = p.term_degree(e);
        let mut total = SwPolynomial::one(&p.weights);
        for (j, &x) in e.iter().enumerate() {
            let sq = total_square_generator(j as u32 + 1, n, i);
            for _ in 0..x {
                total = total.mul_trunc(&sq, d + i);
            }
        }
        out = out.add(&total.part(d + i));
    }
    out
}

/// Degree-`d` components of `1 / (1 + w_1 + ... + w_n)` for `d = 0..=t`.
pub fn sw_inverse_series(n: usize, t: u32) -> Vec<SwPolynomial> {
    let weights = SwPolynomial::sw_weights(n);
    let total = (0..n).fold(SwPolynomial::one(&weights), |acc, i| {
        acc.add(&SwPolynomial::var(&weights, i))
    });
    let inv = total.inverse_trunc(t);
    (0..=t).map(|d| inv.part(d)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThomKind {
    /// Thom spectrum of the universal bundle: `Sq^i U = w_i U`, `U` in degree `n`.
    MO,
    /// Thom spectrum of minus the universal bundle: `Sq U = w^{-1} U`, `U` in degree `-n`.
    MTO,
    /// Oriented: as `MO` with `w_1 = 0`.
    MSO,
}

/// Monomials in `w_1..w_n` of weighted degree `d`, descending lexicographic order.
pub fn sw_monomials(n: usize, d: u32, oriented: bool) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, oriented: bool) {
        if i == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = i as u32 + 1;
        let max = if oriented && i == 0 { 0 } else { left / w };
        for x in 0..=max {
            cur.push(x);
            rec(i + 1, n, left - x * w, cur, out, oriented);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out, oriented);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// `H^*` of `MO(n)`, `MTO(n)` or `MSO(n)` suspended by `shift`, faithful through degree `t`.
pub fn thom_module(kind: ThomKind, n: usize, shift: i32, t: i32) -> Result<GradedA1Module> {
    if n == 0 {
        return Err(Error::Parameter("Thom spectra need rank n >= 1".into()));
    }
    let weights = SwPolynomial::sw_weights(n);
    let oriented = kind == ThomKind::MSO;
    let u_deg = match kind {
        ThomKind::MO | ThomKind::MSO => n as i32,
        ThomKind::MTO => -(n as i32),
    } + shift;
    let top = (t - u_deg).max(-1);
    let kill_w1 = |p: SwPolynomial| -> SwPolynomial {
        if oriented {
            SwPolynomial {
                weights: p.weights.clone(),
                terms: p.terms.into_iter().filter(|e| e[0] == 0).collect(),
            }
        } else {
            p
        }
    };
    // Sq^b U = c_b U
    let c: Vec<SwPolynomial> = match kind {
        ThomKind::MO | ThomKind::MSO => (0..=2)
            .map(|b| {
                if b == 0 {
                    SwPolynomial::one(&weights)
                } else if b <= n {
                    kill_w1(SwPolynomial::var(&weights, b - 1))
                } else {
                    SwPolynomial::zero(&weights)
                }
            })
            .collect(),
        ThomKind::MTO => sw_inverse_series(n, 2),
    };
    let bases: Vec<Vec<Vec<u32>>> = (0..=top.max(0))
        .map(|e| {
            if e <= top {
                sw_monomials(n, e as u32, oriented)
            } else {
                vec![]
            }
        })
        .collect();
    let dims: Vec<usize> = if top < 0 {
        vec![]
    } else {
        bases.iter().map(Vec::len).collect()
    };
    let label = match kind {
        ThomKind::MTO => "U'",
        _ => "U",
    };
    let name = format!("{kind:?}({n})");
    let mut m = GradedA1Module::zero_actions(&name, u_deg, dims.clone());
    for e in 0..=top {
        for (col, mono) in bases[e as usize].iter().enumerate() {
            let p = SwPolynomial::monomial(&weights, mono.clone());
            for i in 1..=2u32 {
                let target = e + i as i32;
                if target > top {
                    continue;
                }
                let mut img = SwPolynomial::zero(&weights);
                for a in 0..=i {
                    let sa = if a == 0 { p.clone() } else { kill_w1(wu_sq(a, &p)) };
                    img = img.add(&sa.mul(&c[(i - a) as usize]));
                }
                let img = kill_w1(img);
                for term in &img.terms {
                    let row = bases[target as usize]
                        .iter()
                        .position(|b| b == term)
                        .expect("image monomial lies in the basis");
                    m.set_sq(i, u_deg + e, col, row, true);
                }
            }
        }
    }
    if top >= 0 {
        let names = |i: usize| format!("w{}", i + 1);
        let labels = bases
            .iter()
            .map(|b| {
                b.iter()
                    .map(|e| {
                        let s = monomial_name(e, &names);
                        if s.is_empty() {
                            label.to_string()
                        } else {
                            format!("{s} {label}")
                        }
                    })
                    .collect()
            })
            .collect();
        m = m.with_labels(labels);
    }
    m.truncation = Some(t);
    Ok(m)
}

/// Metadata for higher Bockstein differentials between cells of a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BocksteinData {
    /// The Bockstein has order `2^order_log2`.
    pub order_log2: u32,
    /// Adams page on which the induced differential acts.
    pub page: u32,
    /// Cell pairs `(a, a + 1)` joined by the Bockstein.
    pub pairs: Vec<(i32, i32)>,
}

#[derive(Clone, Debug)]
pub struct TwistedBz {
    pub module: GradedA1Module,
    pub bockstein: Option<BocksteinData>,
}

/// Cohomology of the Thom spectrum of `2 xi` over `BZ/2^{n-1}`, desuspended to
/// start in degree 0: `H^*(BC_{2^{n-1}})` without its bottom two cells. For
/// `n = 2` this is `H^*(RP^inf_2)`.
pub fn twisted_bz_module(n: u32, t: i32) -> Result<TwistedBz> {
    if n < 2 {
        return Err(Error::Parameter(format!("TwistedBZ({n}): need n >= 2")));
    }
    let base = modcat::bc2n(n - 1, t.max(0) + 2);
    let mut m = GradedA1Module::zero_actions(&format!("TwistedBZ({n})"), 0, vec![1; (t.max(0) + 1) as usize]);
    for d in 0..=t {
        for i in [1u32, 2] {
            if d + i as i32 <= t && base.sq(i, d + 2).get(0, 0) {
                m.set_sq(i, d, 0, 0, true);
            }
        }
    }
    let labels = (0..=t.max(0))
        .map(|d| vec![format!("{} U", base.label(d + 2, 0))])
        .collect();
    m = m.with_labels(labels);
    m.truncation = Some(t);
    let bockstein = (n >= 3).then(|| BocksteinData {
        order_log2: n - 1,
        page: n - 1,
        pairs: (1..t).step_by(2).map(|a| (a, a + 1)).collect(),
    });
    Ok(TwistedBz { module: m, bockstein })
}

/// Total Stiefel-Whitney class of `k * lambda_S` over `(RP^4)^m`, where
/// `lambda_S = prod_{i in S} ([L_i] - 1)`, modulo terms above degree `trunc`.
pub fn virtual_bundle_sw(m: usize, s: &[usize], k: u32, trunc: u32) -> Result<SwPolynomial> {
    if s.is_empty() || s.iter().any(|&i| i == 0 || i > m) {
        return Err(Error::Parameter(format!("subset {s:?} of 1..={m} must be non-empty")));
    }
    let weights = vec![1u32; m];
    let mut total = SwPolynomial::one(&weights);
    // lambda_S = sum over T subset S of (-1)^{|S|-|T|} [tensor_{i in T} L_i].
    for mask in 0u32..(1 << s.len()) {
        let t: Vec<usize> = (0..s.len()).filter(|j| mask >> j & 1 == 1).map(|j| s[j]).collect();
        if t.is_empty() {
            continue;
        }
        let mut w = SwPolynomial::one(&weights);
        for &i in &t {
            w = w.add(&SwPolynomial::var(&weights, i - 1));
        }
        let negative = (s.len() - t.len()) % 2 == 1;
        let factor = if negative { w.inverse_trunc(trunc) } else { w };
        total = total.mul_trunc(&factor, trunc).cap_exponent(4);
    }
    Ok(total.pow_trunc(k, trunc).cap_exponent(4))
}

/// Builtin names understood across the crate: the module builtins plus
/// `MO(n)`, `MTO(n)`, `MSO(n)`, `TwistedBZ(n)`.
pub fn any_builtin(spec: &str, t: i32, shift: i32) -> Result<GradedA1Module> {
    let (name, args) = parse_call(spec)?;
    let kind = match name.as_str() {
        "MO" => Some(ThomKind::MO),
        "MTO" => Some(ThomKind::MTO),
        "MSO" => Some(ThomKind::MSO),
        _ => None,
    };
    if let Some(kind) = kind {
        let [n] = args[..] else {
            return Err(Error::Parameter(format!("`{name}` takes one argument")));
        };
        return thom_module(kind, n as usize, shift, t);
    }
    if name == "TwistedBZ" {
        let [n] = args[..] else {
            return Err(Error::Parameter("`TwistedBZ` takes one argument".into()));
        };
        return Ok(modcat::suspend(&twisted_bz_module(n as u32, t - shift)?.module, shift));
    }
    let m = modcat::standard_module(spec, t - shift)?;
    Ok(modcat::suspend(&m, shift).with_name(&m.name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::F2Vec;
    use crate::modcat::{same_shape, standard_module, submodule, submodule_generated, validate};

    fn w(n: usize, exps: &[u32]) -> SwPolynomial {
        SwPolynomial::monomial(&SwPolynomial::sw_weights(n), exps.to_vec())
    }

    #[test]
    fn wu_examples() {
        let p = wu_sq(1, &w(3, &[0, 1, 0]));
        assert_eq!(p, w(3, &[1, 1, 0]).add(&w(3, &[0, 0, 1])));
        let p = wu_sq(2, &w(5, &[0, 0, 1, 0, 0]));
        let want = w(5, &[0, 1, 1, 0, 0])
            .add(&w(5, &[1, 0, 0, 1, 0]))
            .add(&w(5, &[0, 0, 0, 0, 1]));
        assert_eq!(p, want);
        for i in 0..8u32 {
            for j in 0..4u32 {
                let got = wu_sq(j, &w(1, &[i]));
                let want = if binom_mod2(i as i64, j as i64) {
                    w(1, &[i + j])
                } else {
                    SwPolynomial::zero(&[1])
                };
                assert_eq!(got, want, "Sq{j} w1^{i}");
            }
        }
    }

    #[test]
    fn inverse_series() {
        let inv = sw_inverse_series(2, 6);
        assert_eq!(inv[0], SwPolynomial::one(&[1, 2]));
        assert_eq!(inv[1], w(2, &[1, 0]));
        assert_eq!(inv[2], w(2, &[0, 1]).add(&w(2, &[2, 0])));
        let total = w(2, &[0, 0]).add(&w(2, &[1, 0])).add(&w(2, &[0, 1]));
        let sum = inv.iter().fold(SwPolynomial::zero(&[1, 2]), |a, p| a.add(p));
        assert!(sum.mul_trunc(&total, 6).is_one_through(6));
    }

    #[test]
    fn mo1_matches_formulas() {
        let m = thom_module(ThomKind::MO, 1, 0, 12).unwrap();
        assert!(validate(&m).ok());
        for n in 0..9 {
            let d = n + 1;
            assert_eq!(m.sq(1, d).get(0, 0), (n + 1) % 2 == 1, "Sq1 x^{n}U");
            assert_eq!(m.sq(2, d).get(0, 0), (n * (n + 1) / 2) % 2 == 1, "Sq2 x^{n}U");
        }
    }

    #[test]
    fn mo2_bottom_is_joker() {
        let m = thom_module(ThomKind::MO, 2, -2, 10).unwrap();
        assert!(validate(&m).ok());
        assert_eq!(m.label(0, 0), "U");
        // Sq2 Sq1 U = (w1^3 + w1 w2) U
        let v = m.word_matrix(&[2, 1], 0).column(0);
        let labels: Vec<String> = v.ones().map(|i| m.label(3, i)).collect();
        assert_eq!(labels, vec!["w1^3 U", "w1 w2 U"]);
        let span = submodule_generated(&m, &[(0, F2Vec::unit(1, 0))]);
        let j = submodule(&m, &span);
        assert!(same_shape(&j, &standard_module("J", 10).unwrap()));
    }

    #[test]
    fn mto2_w2_is_free_of_action() {
        let m = thom_module(ThomKind::MTO, 2, 2, 10).unwrap();
        assert!(validate(&m).ok());
        let k = m.labels.as_ref().unwrap()[2].iter().position(|l| l == "w2 U'").unwrap();
        assert!(m.sq(1, 2).column(k).is_zero());
        assert!(m.sq(2, 2).column(k).is_zero());
        // Sq1 U' = w1 U', Sq2 U' = (w2 + w1^2) U'
        let labels = |i: u32| -> Vec<String> { m.sq(i, 0).column(0).ones().map(|r| m.label(i as i32, r)).collect() };
        assert_eq!(labels(1), vec!["w1 U'"]);
        assert_eq!(labels(2), vec!["w1^2 U'", "w2 U'"]);
    }

    #[test]
    fn mo3_sq1_w1w3() {
        let m = thom_module(ThomKind::MO, 3, -3, 10).unwrap();
        assert!(validate(&m).ok());
        let k = m.labels.as_ref().unwrap()[4]
            .iter()
            .position(|l| l == "w1 w3 U")
            .unwrap();
        let img: Vec<String> = m.sq(1, 4).column(k).ones().map(|r| m.label(5, r)).collect();
        assert_eq!(img, vec!["w1^2 w3 U"]);
    }

    #[test]
    fn thom_dimension_counts_and_mso() {
        for n in 1..=3 {
            let m = thom_module(ThomKind::MO, n, 0, 14).unwrap();
            for e in 0..=(14 - n as i32) {
                assert_eq!(m.dim(n as i32 + e), sw_monomials(n, e as u32, false).len());
            }
        }
        let so = thom_module(ThomKind::MSO, 3, -3, 12).unwrap();
        assert!(validate(&so).ok());
        assert!(so.sq(1, 0).is_zero());
        assert_eq!(sw_monomials(2, 2, false), vec![vec![2, 0], vec![0, 1]]);
    }

    #[test]
    fn twisted_modules() {
        let t2 = twisted_bz_module(2, 12).unwrap();
        let rp = standard_module("RPinf(2)", 14).unwrap();
        assert_eq!(t2.module.sq1, modcat::suspend(&rp, -2).sq1);
        assert_eq!(t2.module.sq2, modcat::suspend(&rp, -2).sq2);
        assert!(t2.bockstein.is_none());
        let t3 = twisted_bz_module(3, 12).unwrap();
        assert!(validate(&t3.module).ok());
        assert!(t3.module.sq1.iter().all(|m| m.is_zero()));
        let sq2: Vec<i32> = (0..10).filter(|&d| t3.module.sq(2, d).get(0, 0)).collect();
        assert_eq!(sq2, vec![0, 1, 4, 5, 8, 9]);
        let b = t3.bockstein.unwrap();
        assert_eq!((b.order_log2, b.page), (2, 2));
        assert_eq!(&b.pairs[..3], &[(1, 2), (3, 4), (5, 6)]);
        let t0 = twisted_bz_module(3, 0).unwrap();
        assert_eq!(t0.module.dims, vec![1]);
        assert!(twisted_bz_module(1, 5).is_err());
    }

    #[test]
    fn virtual_bundles() {
        let w = |m, s: &[usize], k| virtual_bundle_sw(m, s, k, 4).unwrap();
        assert!(w(2, &[1, 2], 1).is_one_through(1));
        assert!(!w(2, &[1, 2], 1).is_one_through(4));
        assert!(w(2, &[1, 2], 4).is_one_through(4));
        assert!(!w(2, &[1, 2], 2).is_one_through(4));
        assert!(!w(2, &[1, 2], 3).is_one_through(4));
        assert!(w(3, &[1, 2, 3], 2).is_one_through(4));
        assert!(!w(1, &[1], 4).is_one_through(4));
        assert!(w(1, &[1], 8).is_one_through(4));
        assert!(virtual_bundle_sw(2, &[], 1, 4).is_err());
    }
}
