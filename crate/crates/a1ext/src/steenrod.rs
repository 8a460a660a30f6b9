//! The mod 2 Steenrod algebra in the admissible basis, and the subalgebra A(1).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// `Sq^{i1} ... Sq^{in}` with `i_j >= 2 i_{j+1}`; the empty sequence is `Sq^0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdmissibleMonomial(pub Vec<u32>);

impl AdmissibleMonomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_admissible(word: &[u32]) -> bool {
        word.iter().all(|&i| i > 0) && word.windows(2).all(|w| w[0] >= 2 * w[1])
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("Sq{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Homogeneous sum of admissible monomials with F2 coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SteenrodElement {
    pub terms: BTreeSet<AdmissibleMonomial>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(&[])
    }

    pub fn sq(i: u32) -> Self {
        if i == 0 {
            Self::one()
        } else {
            Self::monomial(&[i])
        }
    }

    /// Panics if `seq` is not admissible.
    pub fn monomial(seq: &[u32]) -> Self {
        assert!(AdmissibleMonomial::is_admissible(seq), "{seq:?} is not admissible");
        let mut terms = BTreeSet::new();
        terms.insert(AdmissibleMonomial(seq.to_vec()));
        SteenrodElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().next().map(AdmissibleMonomial::degree)
    }

    pub fn add(&self, other: &Self) -> Self {
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        SteenrodElement { terms }
    }

    fn toggle(&mut self, m: AdmissibleMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `C(n, k) mod 2` for integers, using `C(n, k) = (-1)^k C(k - n - 1, k)` when
/// `n < 0` and Lucas' theorem otherwise.
pub fn binom_mod2(n: i64, k: i64) -> bool {
    if k < 0 {
        return false;
    }
    if n < 0 {
        return binom_mod2(k - n - 1, k);
    }
    k <= n && (k & !n) == 0
}

/// Reduces `Sq^{word}` to admissible form by rewriting the leftmost
/// inadmissible pair `Sq^a Sq^b` (a < 2b) with the Adem relation
/// `sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c`.
pub fn adem_reduce(word: &[u32]) -> SteenrodElement {
    let mut pending: BTreeMap<Vec<u32>, bool> = BTreeMap::new();
    let start: Vec<u32> = word.iter().copied().filter(|&i| i > 0).collect();
    pending.insert(start, true);
    let mut out = SteenrodElement::zero();
    while let Some((w, odd)) = pending.pop_first() {
        if !odd {
            continue;
        }
        let Some(i) = w.windows(2).position(|p| p[0] < 2 * p[1]) else {
            out.toggle(AdmissibleMonomial(w));
            continue;
        };
        let (a, b) = (w[i] as i64, w[i + 1] as i64);
        for c in 0..=a / 2 {
            if !binom_mod2(b - c - 1, a - 2 * c) {
                continue;
            }
            let mut nw = Vec::with_capacity(w.len());
            nw.extend_from_slice(&w[..i]);
            nw.push((a + b - c) as u32);
            if c > 0 {
                nw.push(c as u32);
            }
            nw.extend_from_slice(&w[i + 2..]);
            *pending.entry(nw).or_insert(false) ^= true;
        }
    }
    out
}

pub fn product(a: &SteenrodElement, b: &SteenrodElement) -> SteenrodElement {
    let mut out = SteenrodElement::zero();
    for x in &a.terms {
        for y in &b.terms {
            let mut w = x.0.clone();
            w.extend_from_slice(&y.0);
            out = out.add(&adem_reduce(&w));
        }
    }
    out
}

fn admissible_sequences(d: u32, max_first: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=d.min(max_first) {
        for rest in admissible_sequences(d - first, first / 2) {
            let mut s = vec![first];
            s.extend(rest);
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Degree-`d` basis of the Steenrod algebra, or of A(1) when `a1` is set.
pub fn admissible_basis(d: u32, a1: bool) -> Vec<SteenrodElement> {
    if a1 {
        (0..8).filter(|&k| A1_DEGREES[k] == d).map(a1_basis_element).collect()
    } else {
        admissible_sequences(d, d)
            .into_iter()
            .map(|s| SteenrodElement::monomial(&s))
            .collect()
    }
}

/// An element of A(1) as a bitmask over the basis `b0..b7`.
pub type A1Elt = u8;

pub const A1_DIM: usize = 8;

/// Degrees of `1, Sq1, Sq2, Sq3, Sq2Sq1, Sq3Sq1, Sq5+Sq4Sq1, Sq5Sq1`.
pub const A1_DEGREES: [u32; A1_DIM] = [0, 1, 2, 3, 3, 4, 5, 6];

/// Each basis element as a composite of `Sq1`/`Sq2`, leftmost applied last.
pub const A1_WORDS: [&[u32]; A1_DIM] = [&[], &[1], &[2], &[1, 2], &[2, 1], &[1, 2, 1], &[2, 1, 2], &[2, 1, 2, 1]];

pub const A1_LABELS: [&str; A1_DIM] = ["1", "Sq1", "Sq2", "Sq3", "Sq2Sq1", "Sq3Sq1", "Sq5+Sq4Sq1", "Sq5Sq1"];

pub fn a1_basis_element(k: usize) -> SteenrodElement {
    adem_reduce(A1_WORDS[k])
}

/// Expresses a homogeneous element of A(1) in the basis `b0..b7`.
pub fn a1_decompose(e: &SteenrodElement) -> Option<A1Elt> {
    let Some(d) = e.degree() else {
        return Some(0);
    };
    let ks: Vec<usize> = (0..A1_DIM).filter(|&k| A1_DEGREES[k] == d).collect();
    (0u32..(1 << ks.len())).find_map(|mask| {
        let mut sum = SteenrodElement::zero();
        let mut elt = 0u8;
        for (j, &k) in ks.iter().enumerate() {
            if mask >> j & 1 == 1 {
                sum = sum.add(&a1_basis_element(k));
                elt |= 1 << k;
            }
        }
        (sum == *e).then_some(elt)
    })
}

fn a1_table() -> &'static [[A1Elt; A1_DIM]; A1_DIM] {
    static TABLE: OnceLock<[[A1Elt; A1_DIM]; A1_DIM]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[0u8; A1_DIM]; A1_DIM];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let p = product(&a1_basis_element(i), &a1_basis_element(j));
                *cell = a1_decompose(&p).expect("A(1) is closed under products");
            }
        }
        t
    })
}

pub fn a1_mul_basis(i: usize, j: usize) -> A1Elt {
    a1_table()[i][j]
}

pub fn a1_mul(x: A1Elt, y: A1Elt) -> A1Elt {
    let t = a1_table();
    let mut out = 0;
    for i in (0..A1_DIM).filter(|i| x >> i & 1 == 1) {
        for j in (0..A1_DIM).filter(|j| y >> j & 1 == 1) {
            out ^= t[i][j];
        }
    }
    out
}

/// The element of A(1) represented by a word in `Sq1`, `Sq2`.
pub fn a1_word_element(word: &[u32]) -> A1Elt {
    a1_decompose(&adem_reduce(word)).expect("words in Sq1, Sq2 lie in A(1)")
}

pub fn a1_display(x: A1Elt) -> String {
    let parts: Vec<&str> = (0..A1_DIM).filter(|k| x >> k & 1 == 1).map(|k| A1_LABELS[k]).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
