//! Finite graded A(1)-modules given by their Sq1 and Sq2 matrices.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2core::{F2Matrix, F2Vec, Subspace};
use crate::steenrod::{a1_mul_basis, a1_word_element, binom_mod2, A1Elt, A1_DEGREES, A1_DIM, A1_LABELS, A1_WORDS};

/// Degree `min_degree + i` has dimension `dims[i]`. `sq1[i]` and `sq2[i]` act
/// out of that degree. `truncation = Some(t)` means the module is only
/// faithful through degree `t` (cells above were cut off); `None` means the
/// module is finite and stored in full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedA1Module {
    pub name: String,
    pub min_degree: i32,
    pub dims: Vec<usize>,
    pub sq1: Vec<F2Matrix>,
    pub sq2: Vec<F2Matrix>,
    pub labels: Option<Vec<Vec<String>>>,
    pub truncation: Option<i32>,
}

impl GradedA1Module {
    pub fn zero_actions(name: &str, min_degree: i32, dims: Vec<usize>) -> Self {
        let n = dims.len();
        let dim_at = |i: usize| dims.get(i).copied().unwrap_or(0);
        let sq1 = (0..n).map(|i| F2Matrix::zeros(dim_at(i + 1), dims[i])).collect();
        let sq2 = (0..n).map(|i| F2Matrix::zeros(dim_at(i + 2), dims[i])).collect();
        GradedA1Module {
            name: name.to_string(),
            min_degree,
            dims,
            sq1,
            sq2,
            labels: None,
            truncation: None,
        }
    }

    pub fn zero() -> Self {
        Self::zero_actions("0", 0, vec![])
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.min_degree..=self.max_degree()
    }

    pub fn dim(&self, d: i32) -> usize {
        let i = d - self.min_degree;
        if i < 0 {
            0
        } else {
            self.dims.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Highest degree through which the module is faithful.
    pub fn faithful_through(&self) -> Option<i32> {
        self.truncation
    }

    /// Matrix of `Sq^i` (i = 1, 2) out of degree `d`.
    pub fn sq(&self, i: u32, d: i32) -> F2Matrix {
        let k = d - self.min_degree;
        let table = match i {
            1 => &self.sq1,
            2 => &self.sq2,
            _ => panic!("only Sq1 and Sq2 are stored"),
        };
        if k >= 0 && (k as usize) < table.len() {
            table[k as usize].clone()
        } else {
            F2Matrix::zeros(self.dim(d + i as i32), self.dim(d))
        }
    }

    pub fn set_sq(&mut self, i: u32, d: i32, from: usize, to: usize, value: bool) {
        let k = (d - self.min_degree) as usize;
        let table = if i == 1 { &mut self.sq1 } else { &mut self.sq2 };
        table[k].set(to, from, value);
    }

    /// Composite operator of a word in Sq1/Sq2 (leftmost applied last) out of degree `d`.
    pub fn word_matrix(&self, word: &[u32], d: i32) -> F2Matrix {
        let mut m = F2Matrix::identity(self.dim(d));
        let mut deg = d;
        for &i in word.iter().rev() {
            m = self.sq(i, deg).mul(&m);
            deg += i as i32;
        }
        m
    }

    /// Action of A(1) basis element `b_k` out of degree `d`.
    pub fn basis_action(&self, k: usize, d: i32) -> F2Matrix {
        self.word_matrix(A1_WORDS[k], d)
    }

    pub fn act(&self, x: A1Elt, d: i32, v: &F2Vec) -> Vec<(i32, F2Vec)> {
        (0..A1_DIM)
            .filter(|k| x >> k & 1 == 1)
            .map(|k| (d + A1_DEGREES[k] as i32, self.basis_action(k, d).mul_vec(v)))
            .collect()
    }

    pub fn label(&self, d: i32, i: usize) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get((d - self.min_degree) as usize))
            .and_then(|l| l.get(i))
            .cloned()
            .unwrap_or_else(|| format!("e{d}_{i}"))
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        assert_eq!(labels.len(), self.dims.len());
        self.labels = Some(labels);
        self
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Drops cells above degree `t`.
    pub fn restrict(&self, t: i32) -> Self {
        let truncation = Some(self.truncation.map_or(t, |x| x.min(t)));
        if t >= self.max_degree() {
            let mut m = self.clone();
            if self.truncation.is_some() {
                m.truncation = truncation;
            }
            return m;
        }
        let keep = (t - self.min_degree + 1).max(0) as usize;
        let mut m = Self::zero_actions(&self.name, self.min_degree, self.dims[..keep].to_vec());
        for (k, d) in (0..keep).zip(self.degrees()) {
            if k + 1 < keep {
                m.sq1[k] = self.sq(1, d);
            }
            if k + 2 < keep {
                m.sq2[k] = self.sq(2, d);
            }
        }
        if let Some(l) = &self.labels {
            m.labels = Some(l[..keep].to_vec());
        }
        m.truncation = truncation;
        m
    }

    /// Removes empty degrees at either end.
    pub fn trimmed(&self) -> Self {
        let Some(first) = self.dims.iter().position(|&d| d > 0) else {
            let mut z = Self::zero();
            z.name = self.name.clone();
            z.truncation = self.truncation;
            return z;
        };
        let last = self.dims.iter().rposition(|&d| d > 0).unwrap();
        let lo = self.min_degree + first as i32;
        let mut m = Self::zero_actions(&self.name, lo, self.dims[first..=last].to_vec());
        for (k, d) in (first..=last).zip(lo..) {
            m.sq1[k - first] = self.sq(1, d);
            m.sq2[k - first] = self.sq(2, d);
        }
        if let Some(l) = &self.labels {
            m.labels = Some(l[first..=last].to_vec());
        }
        m.truncation = self.truncation;
        m
    }

    pub fn to_file(&self) -> ModuleFile {
        let mut sq1 = Vec::new();
        let mut sq2 = Vec::new();
        for d in self.degrees() {
            for (i, table) in [(1, &mut sq1), (2, &mut sq2)] {
                let m = self.sq(i, d);
                for from in 0..m.cols() {
                    for to in 0..m.rows() {
                        if m.get(to, from) {
                            table.push([d as i64, from as i64, to as i64]);
                        }
                    }
                }
            }
        }
        ModuleFile {
            name: Some(self.name.clone()),
            min_degree: self.min_degree,
            dims: self.dims.clone(),
            sq1,
            sq2,
            labels: self.labels.clone(),
            truncation: self.truncation,
        }
    }

    pub fn from_file(f: &ModuleFile) -> Result<Self> {
        let mut m = Self::zero_actions(f.name.as_deref().unwrap_or("file"), f.min_degree, f.dims.clone());
        for (i, table) in [(1u32, &f.sq1), (2u32, &f.sq2)] {
            for &[d, from, to] in table {
                let d = d as i32;
                let (from, to) = (from as usize, to as usize);
                if from >= m.dim(d) || to >= m.dim(d + i as i32) {
                    return Err(Error::range(
                        &m.name,
                        d,
                        format!("Sq{i} entry ({from} -> {to}) outside the module"),
                    ));
                }
                m.set_sq(i, d, from, to, true);
            }
        }
        if let Some(l) = &f.labels {
            if l.len() != m.dims.len() || l.iter().zip(&m.dims).any(|(a, &b)| a.len() != b) {
                return Err(Error::Parse("labels do not match dims".into()));
            }
            m.labels = Some(l.clone());
        }
        m.truncation = f.truncation;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("module serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&s)
    }
}

/// On-disk module format; actions are `[from_degree, from_index, to_index]` triples.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub min_degree: i32,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub sq1: Vec<[i64; 3]>,
    #[serde(default)]
    pub sq2: Vec<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub degree: i32,
    pub word: Vec<u32>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub words_checked: usize,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&ValidationFailure> {
        self.failures.first()
    }
}

/// Words over {1, 2} with total degree in `1..=max`.
pub fn sq_words(max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut frontier = vec![Vec::new()];
    while let Some(w) = frontier.pop() {
        let deg: u32 = w.iter().sum();
        for i in [1u32, 2] {
            if deg + i <= max {
                let mut nw = w.clone();
                nw.push(i);
                out.push(nw.clone());
                frontier.push(nw);
            }
        }
    }
    out.sort_by_key(|w| (w.iter().sum::<u32>(), w.clone()));
    out
}

/// Checks matrix shapes and that every word in Sq1, Sq2 of degree at most 8
/// acts as its normal form in A(1).
pub fn validate(m: &GradedA1Module) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = m.dims.len();
    if m.sq1.len() != n || m.sq2.len() != n {
        report.failures.push(ValidationFailure {
            degree: m.min_degree,
            word: vec![],
            detail: "action tables do not cover every degree".into(),
        });
        return report;
    }
    for d in m.degrees() {
        for i in [1u32, 2] {
            let k = (d - m.min_degree) as usize;
            let a = if i == 1 { &m.sq1[k] } else { &m.sq2[k] };
            if a.rows() != m.dim(d + i as i32) || a.cols() != m.dim(d) {
                report.failures.push(ValidationFailure {
                    degree: d,
                    word: vec![i],
                    detail: format!("Sq{i} matrix has shape {}x{}", a.rows(), a.cols()),
                });
            }
        }
    }
    if !report.ok() {
        return report;
    }
    let words = sq_words(8);
    let normal: Vec<A1Elt> = words.iter().map(|w| a1_word_element(w)).collect();
    for d in m.degrees() {
        if m.dim(d) == 0 {
            continue;
        }
        for (w, &nf) in words.iter().zip(&normal) {
            report.words_checked += 1;
            let lhs = m.word_matrix(w, d);
            let deg = w.iter().sum::<u32>() as i32;
            let mut rhs = F2Matrix::zeros(m.dim(d + deg), m.dim(d));
            for k in (0..A1_DIM).filter(|k| nf >> k & 1 == 1) {
                rhs = rhs.add(&m.basis_action(k, d));
            }
            if lhs != rhs {
                report.failures.push(ValidationFailure {
                    degree: d,
                    word: w.clone(),
                    detail: format!(
                        "composite differs from its normal form {}",
                        crate::steenrod::a1_display(nf)
                    ),
                });
            }
        }
    }
    report
}

pub fn suspend(m: &GradedA1Module, j: i32) -> GradedA1Module {
    let mut out = m.clone();
    out.min_degree += j;
    out.truncation = m.truncation.map(|t| t + j);
    if j != 0 {
        out.name = format!("S^{j} {}", m.name);
    }
    out
}

fn combined_truncation(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn block_diag(a: &F2Matrix, b: &F2Matrix) -> F2Matrix {
    let mut m = F2Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in a.row(r).ones() {
            m.set(r, c, true);
        }
    }
    for r in 0..b.rows() {
        for c in b.row(r).ones() {
            m.set(a.rows() + r, a.cols() + c, true);
        }
    }
    m
}

pub fn direct_sum(a: &GradedA1Module, b: &GradedA1Module) -> GradedA1Module {
    if a.total_dim() == 0 && a.truncation.is_none() {
        return b.clone();
    }
    if b.total_dim() == 0 && b.truncation.is_none() {
        return a.clone();
    }
    let trunc = combined_truncation(a.truncation, b.truncation);
    let (a, b) = match trunc {
        Some(t) => (a.restrict(t), b.restrict(t)),
        None => (a.clone(), b.clone()),
    };
    let lo = a.min_degree.min(b.min_degree);
    let hi = a.max_degree().max(b.max_degree());
    let dims = (lo..=hi).map(|d| a.dim(d) + b.dim(d)).collect();
    let mut m = GradedA1Module::zero_actions(&format!("{} + {}", a.name, b.name), lo, dims);
    for (k, d) in (lo..=hi).enumerate() {
        m.sq1[k] = block_diag(&a.sq(1, d), &b.sq(1, d));
        m.sq2[k] = block_diag(&a.sq(2, d), &b.sq(2, d));
    }
    let labels = (lo..=hi)
        .map(|d| {
            (0..a.dim(d))
                .map(|i| a.label(d, i))
                .chain((0..b.dim(d)).map(|i| b.label(d, i)))
                .collect()
        })
        .collect();
    m.labels = Some(labels);
    m.truncation = trunc;
    m
}

/// Cartan-formula tensor product, cut off above degree `t`.
pub fn tensor_product(a: &GradedA1Module, b: &GradedA1Module, t: i32) -> GradedA1Module {
    // Faithful range of the product given the factors' ranges.
    let mut trunc = Some(t);
    if let Some(ta) = a.truncation {
        trunc = combined_truncation(trunc, Some(ta + b.min_degree));
    }
    if let Some(tb) = b.truncation {
        trunc = combined_truncation(trunc, Some(tb + a.min_degree));
    }
    let lo = a.min_degree + b.min_degree;
    let hi = (a.max_degree() + b.max_degree()).min(t);
    if a.total_dim() == 0 || b.total_dim() == 0 || hi < lo {
        let mut z = GradedA1Module::zero();
        z.truncation = trunc;
        return z;
    }
    // Basis of degree d: pairs (da, i, j) ordered by da then i then j.
    let index: Vec<Vec<(i32, usize, usize)>> = (lo..=hi)
        .map(|d| {
            let mut v = Vec::new();
            for da in a.degrees() {
                let db = d - da;
                for i in 0..a.dim(da) {
                    for j in 0..b.dim(db) {
                        v.push((da, i, j));
                    }
                }
            }
            v
        })
        .collect();
    let pos: Vec<BTreeMap<(i32, usize, usize), usize>> = index
        .iter()
        .map(|v| v.iter().enumerate().map(|(k, &x)| (x, k)).collect())
        .collect();
    let dims: Vec<usize> = index.iter().map(Vec::len).collect();
    let mut m = GradedA1Module::zero_actions(&format!("{} (x) {}", a.name, b.name), lo, dims);
    for d in lo..=hi {
        let k = (d - lo) as usize;
        for (col, &(da, i, j)) in index[k].iter().enumerate() {
            let db = d - da;
            // (left op, right op) pairs for Sq1 and Sq2 by Cartan.
            let terms: [(u32, &[(u32, u32)]); 2] = [(1, &[(1, 0), (0, 1)]), (2, &[(2, 0), (1, 1), (0, 2)])];
            for (sqi, split) in terms {
                let target = d + sqi as i32;
                if target > hi {
                    continue;
                }
                let tk = (target - lo) as usize;
                for &(p, q) in split {
                    let xs: Vec<usize> = if p == 0 {
                        vec![i]
                    } else {
                        a.sq(p, da).column(i).ones().collect()
                    };
                    let ys: Vec<usize> = if q == 0 {
                        vec![j]
                    } else {
                        b.sq(q, db).column(j).ones().collect()
                    };
                    for &x in &xs {
                        for &y in &ys {
                            let row = pos[tk][&(da + p as i32, x, y)];
                            let table = if sqi == 1 { &mut m.sq1 } else { &mut m.sq2 };
                            let cur = table[k].get(row, col);
                            table[k].set(row, col, !cur);
                        }
                    }
                }
            }
        }
    }
    let labels = index
        .iter()
        .zip(lo..)
        .map(|(v, d)| {
            v.iter()
                .map(|&(da, i, j)| format!("{}*{}", a.label(da, i), b.label(d - da, j)))
                .collect()
        })
        .collect();
    m.labels = Some(labels);
    m.truncation = if a.truncation.is_none() && b.truncation.is_none() && hi == a.max_degree() + b.max_degree() {
        None
    } else {
        trunc
    };
    m
}

/// Span of the A(1)-submodule generated by the given homogeneous elements.
pub fn submodule_generated(m: &GradedA1Module, gens: &[(i32, F2Vec)]) -> BTreeMap<i32, Subspace> {
    let mut spans: BTreeMap<i32, Subspace> = BTreeMap::new();
    for (d, v) in gens {
        for (k, &deg) in A1_DEGREES.iter().enumerate() {
            let e = d + deg as i32;
            let w = m.basis_action(k, *d).mul_vec(v);
            spans.entry(e).or_insert_with(|| Subspace::new(m.dim(e))).insert(&w);
        }
    }
    spans.retain(|_, s| s.dim() > 0);
    spans
}

/// The submodule with the given per-degree spans (assumed closed under the
/// action), in the span bases.
pub fn submodule(m: &GradedA1Module, sub: &BTreeMap<i32, Subspace>) -> GradedA1Module {
    let bases: Vec<Vec<F2Vec>> = m
        .degrees()
        .map(|d| sub.get(&d).map(Subspace::basis).unwrap_or_default())
        .collect();
    let dims = bases.iter().map(Vec::len).collect();
    let mut s = GradedA1Module::zero_actions(&format!("sub {}", m.name), m.min_degree, dims);
    for (k, d) in m.degrees().enumerate() {
        for (col, v) in bases[k].iter().enumerate() {
            for i in [1u32, 2] {
                let e = d + i as i32;
                let Some(target) = bases.get((e - m.min_degree) as usize) else {
                    continue;
                };
                if target.is_empty() {
                    continue;
                }
                let img = m.sq(i, d).mul_vec(v);
                let basis = F2Matrix::from_columns(m.dim(e), target);
                let x = basis
                    .solve(&img)
                    .unwrap()
                    .expect("submodule is closed under Sq1 and Sq2");
                for row in x.ones() {
                    s.set_sq(i, d, col, row, true);
                }
            }
        }
    }
    s.truncation = m.truncation;
    s.trimmed()
}

/// Quotient by a submodule given as per-degree spans (assumed closed under
/// the action). The complement basis consists of standard basis vectors,
/// chosen greedily in index order.
pub fn quotient(m: &GradedA1Module, sub: &BTreeMap<i32, Subspace>) -> GradedA1Module {
    let mut keep: Vec<Vec<usize>> = Vec::new();
    let mut change: Vec<F2Matrix> = Vec::new();
    for d in m.degrees() {
        let n = m.dim(d);
        let mut s = sub.get(&d).cloned().unwrap_or_else(|| Subspace::new(n));
        let sub_basis = s.basis();
        let mut kept = Vec::new();
        for i in 0..n {
            if s.insert(&F2Vec::unit(n, i)) {
                kept.push(i);
            }
        }
        // Columns: submodule basis then kept unit vectors; invertible.
        let mut cols = sub_basis;
        cols.extend(kept.iter().map(|&i| F2Vec::unit(n, i)));
        change.push(F2Matrix::from_columns(n, &cols));
        keep.push(kept);
    }
    let dims: Vec<usize> = keep.iter().map(Vec::len).collect();
    let mut q = GradedA1Module::zero_actions(&format!("{}/sub", m.name), m.min_degree, dims);
    let coords = |d: i32, v: &F2Vec| -> F2Vec {
        let k = (d - m.min_degree) as usize;
        let x = change[k].solve(v).unwrap().expect("change of basis is invertible");
        let nsub = m.dim(d) - keep[k].len();
        x.slice(nsub, x.len())
    };
    for d in m.degrees() {
        let k = (d - m.min_degree) as usize;
        for (col, &i) in keep[k].iter().enumerate() {
            for sqi in [1u32, 2] {
                let e = d + sqi as i32;
                if m.dim(e) == 0 {
                    continue;
                }
                let img = m.sq(sqi, d).column(i);
                let c = coords(e, &img);
                for row in c.ones() {
                    q.set_sq(sqi, d, col, row, true);
                }
            }
        }
    }
    q.labels = Some(
        m.degrees()
            .zip(&keep)
            .map(|(d, kept)| kept.iter().map(|&i| m.label(d, i)).collect())
            .collect(),
    );
    q.truncation = m.truncation;
    q.trimmed()
}

/// `A(1) / A(1){relations}` for relations given as elements of A(1).
pub fn free_quotient(relations: &[A1Elt]) -> GradedA1Module {
    let a1 = a1_module();
    let gens: Vec<(i32, F2Vec)> = relations
        .iter()
        .filter(|&&r| r != 0)
        .map(|&r| {
            let deg = (0..A1_DIM).find(|k| r >> k & 1 == 1).map(|k| A1_DEGREES[k]).unwrap() as i32;
            let ks: Vec<usize> = (0..A1_DIM).filter(|&k| A1_DEGREES[k] as i32 == deg).collect();
            let bits: Vec<u8> = ks.iter().map(|&k| r >> k & 1).collect();
            (deg, F2Vec::from_bits(&bits))
        })
        .collect();
    quotient(&a1, &submodule_generated(&a1, &gens))
}

/// The free module A(1) on one generator in degree 0.
pub fn a1_module() -> GradedA1Module {
    let dims: Vec<usize> = (0..=6)
        .map(|d| A1_DEGREES.iter().filter(|&&x| x == d).count())
        .collect();
    let idx = |k: usize| -> (i32, usize) {
        let d = A1_DEGREES[k];
        (d as i32, (0..k).filter(|&j| A1_DEGREES[j] == d).count())
    };
    let mut m = GradedA1Module::zero_actions("A1", 0, dims);
    for k in 0..A1_DIM {
        let (d, col) = idx(k);
        for (sqi, b) in [(1u32, 1usize), (2, 2)] {
            let prod = a1_mul_basis(b, k);
            for j in (0..A1_DIM).filter(|j| prod >> j & 1 == 1) {
                let (_, row) = idx(j);
                m.set_sq(sqi, d, col, row, true);
            }
        }
    }
    let labels = (0..=6u32)
        .map(|d| {
            (0..A1_DIM)
                .filter(|&k| A1_DEGREES[k] == d)
                .map(|k| A1_LABELS[k].to_string())
                .collect()
        })
        .collect();
    m.with_labels(labels)
}

fn cells(name: &str, cells: &[i32], sq1: &[(i32, i32)], sq2: &[(i32, i32)]) -> GradedA1Module {
    let lo = *cells.iter().min().unwrap();
    let hi = *cells.iter().max().unwrap();
    let dims = (lo..=hi).map(|d| cells.contains(&d) as usize).collect();
    let mut m = GradedA1Module::zero_actions(name, lo, dims);
    for &(a, _) in sq1 {
        m.set_sq(1, a, 0, 0, true);
    }
    for &(a, _) in sq2 {
        m.set_sq(2, a, 0, 0, true);
    }
    let labels = (lo..=hi)
        .map(|d| {
            if cells.contains(&d) {
                vec![format!("c{d}")]
            } else {
                vec![]
            }
        })
        .collect();
    m.with_labels(labels)
}

/// Cells `x^k .. x^top` of projective space with `Sq^j x^i = C(i, j) x^{i+j}`.
/// Negative `k` gives the stunted spaces `RP^inf_k`.
pub fn projective(name: &str, k: i32, top: i32) -> GradedA1Module {
    let dims = vec![1; (top - k + 1).max(0) as usize];
    let mut m = GradedA1Module::zero_actions(name, k, dims);
    for i in k..=top {
        for j in [1u32, 2] {
            if i + j as i32 <= top && binom_mod2(i as i64, j as i64) {
                m.set_sq(j, i, 0, 0, true);
            }
        }
    }
    let labels = (k..=top).map(|i| vec![format!("x^{i}")]).collect();
    m.with_labels(labels)
}

/// `H^*(BC_{2^n}; F2)`: `RP^inf` for `n = 1`, otherwise `F2[a, b]/(a^2)` with
/// trivial Sq1 and `Sq2 b^k = k b^{k+1}`, `Sq2 a b^k = k a b^{k+1}`.
pub fn bc2n(n: u32, top: i32) -> GradedA1Module {
    if n == 1 {
        return projective("BC2n(1)", 0, top).with_name("BC2n(1)");
    }
    let mut m = GradedA1Module::zero_actions(&format!("BC2n({n})"), 0, vec![1; (top + 1) as usize]);
    for d in 0..=top - 2 {
        let k = d / 2;
        if k % 2 == 1 {
            m.set_sq(2, d, 0, 0, true);
        }
    }
    let labels = (0..=top)
        .map(|d| {
            let k = d / 2;
            vec![match (d % 2, k) {
                (0, 0) => "1".to_string(),
                (0, _) => format!("b^{k}"),
                (_, 0) => "a".to_string(),
                _ => format!("a b^{k}"),
            }]
        })
        .collect();
    m.with_labels(labels)
}

/// The periodic module `P`: cells 0, 2, 3, 4, ... with Sq2 from 0 to 2 and,
/// from degree 2 on, the pattern of reduced `RP^inf` raised one degree.
pub fn periodic_p(top: i32) -> GradedA1Module {
    let mut cells_list = vec![0];
    cells_list.extend(2..=top.max(0));
    let lo = 0;
    let dims = (lo..=top.max(0)).map(|d| cells_list.contains(&d) as usize).collect();
    let mut m = GradedA1Module::zero_actions("P", lo, dims);
    if top >= 2 {
        m.set_sq(2, 0, 0, 0, true);
    }
    for d in 2..=top {
        let i = (d - 1) as i64;
        for j in [1u32, 2] {
            if d + j as i32 <= top && binom_mod2(i, j as i64) {
                m.set_sq(j, d, 0, 0, true);
            }
        }
    }
    let labels = (lo..=top.max(0))
        .map(|d| {
            if cells_list.contains(&d) {
                vec![format!("c{d}")]
            } else {
                vec![]
            }
        })
        .collect();
    m.with_labels(labels)
}

/// Splits `NAME(a,b)` into the name and its integer arguments.
pub fn parse_call(spec: &str) -> Result<(String, Vec<i64>)> {
    let spec = spec.trim();
    let Some(open) = spec.find('(') else {
        return Ok((spec.to_string(), vec![]));
    };
    if !spec.ends_with(')') {
        return Err(Error::Parse(format!("unbalanced parentheses in `{spec}`")));
    }
    let name = spec[..open].trim().to_string();
    let inner = &spec[open + 1..spec.len() - 1];
    let args = inner
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad argument `{s}` in `{spec}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((name, args))
}

fn cut(m: GradedA1Module, t: i32, infinite: bool) -> GradedA1Module {
    if infinite {
        let mut r = m.restrict(t);
        r.truncation = Some(t);
        r
    } else if t < m.max_degree() {
        m.restrict(t)
    } else {
        m
    }
}

/// Builtin modules: F2, A1, M, J, Q, Ceta, P, RP(n,k), RPinf, RPinf(k), BC2n(n).
pub fn standard_module(spec: &str, t: i32) -> Result<GradedA1Module> {
    let (name, args) = parse_call(spec)?;
    let want = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::Parameter(format!("`{name}` takes {n} argument(s)")))
        }
    };
    let m = match name.as_str() {
        "F2" => {
            want(0)?;
            cut(cells("F2", &[0], &[], &[]), t, false)
        }
        "A1" => {
            want(0)?;
            cut(a1_module(), t, false)
        }
        "M" => {
            want(0)?;
            cut(free_quotient(&[1 << 1]).with_name("M"), t, false)
        }
        "J" => {
            want(0)?;
            cut(free_quotient(&[1 << 3]).with_name("J"), t, false)
        }
        "Q" => {
            want(0)?;
            cut(cells("Q", &[0, 2, 3], &[(2, 3)], &[(0, 2)]), t, false)
        }
        "Ceta" => {
            want(0)?;
            cut(cells("Ceta", &[0, 2], &[], &[(0, 2)]), t, false)
        }
        "P" => {
            want(0)?;
            let mut p = periodic_p(t);
            p.truncation = Some(t);
            p
        }
        "RP" => {
            want(2)?;
            let (n, k) = (args[0] as i32, args[1] as i32);
            if k > n {
                return Err(Error::Parameter(format!("RP({n},{k}): k exceeds n")));
            }
            cut(projective(&format!("RP({n},{k})"), k, n), t, false)
        }
        "RPinf" => {
            let k = match args.len() {
                0 => 0,
                1 => args[0] as i32,
                _ => return Err(Error::Parameter("RPinf takes at most one argument".into())),
            };
            let name = if args.is_empty() {
                "RPinf".to_string()
            } else {
                format!("RPinf({k})")
            };
            let mut m = projective(&name, k, t.max(k));
            m = m.restrict(t);
            m.truncation = Some(t);
            m
        }
        "BC2n" => {
            want(1)?;
            if args[0] < 1 {
                return Err(Error::Parameter("BC2n(n) needs n >= 1".into()));
            }
            let mut m = bc2n(args[0] as u32, t.max(0));
            m.truncation = Some(t);
            m
        }
        _ => return Err(Error::UnknownName(spec.to_string())),
    };
    Ok(m)
}

pub const BUILTIN_EXAMPLES: &[&str] = &[
    "F2",
    "A1",
    "M",
    "J",
    "Q",
    "Ceta",
    "P",
    "RP(7,3)",
    "RP(6,1)",
    "RPinf",
    "RPinf(-1)",
    "BC2n(1)",
    "BC2n(2)",
    "BC2n(3)",
];

/// A short exact sequence `0 -> left -> middle -> right -> 0` with maps given per degree.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub left: GradedA1Module,
    pub middle: GradedA1Module,
    pub right: GradedA1Module,
    pub inject: BTreeMap<i32, F2Matrix>,
    pub surject: BTreeMap<i32, F2Matrix>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SesReport {
    pub failures: Vec<(i32, String)>,
}

impl SesReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn map_at(maps: &BTreeMap<i32, F2Matrix>, d: i32, rows: usize, cols: usize) -> F2Matrix {
    maps.get(&d).cloned().unwrap_or_else(|| F2Matrix::zeros(rows, cols))
}

pub fn ses_check(s: &ShortExactSequence) -> SesReport {
    let mut report = SesReport::default();
    let (l, m, n) = (&s.left, &s.middle, &s.right);
    let lo = l.min_degree.min(m.min_degree).min(n.min_degree);
    let hi = l.max_degree().max(m.max_degree()).max(n.max_degree());
    for d in lo..=hi {
        let f = map_at(&s.inject, d, m.dim(d), l.dim(d));
        let g = map_at(&s.surject, d, n.dim(d), m.dim(d));
        if (f.rows(), f.cols()) != (m.dim(d), l.dim(d)) || (g.rows(), g.cols()) != (n.dim(d), m.dim(d)) {
            report.failures.push((d, "map has the wrong shape".into()));
            continue;
        }
        let rf = f.rank();
        let rg = g.rank();
        if rf != l.dim(d) {
            report.failures.push((d, "inject is not injective".into()));
        }
        if rg != n.dim(d) {
            report.failures.push((d, "surject is not surjective".into()));
        }
        if !g.mul(&f).is_zero() || rf + rg != m.dim(d) {
            report
                .failures
                .push((d, "image of inject differs from kernel of surject".into()));
        }
        for i in [1u32, 2] {
            let e = d + i as i32;
            let f2 = map_at(&s.inject, e, m.dim(e), l.dim(e));
            let g2 = map_at(&s.surject, e, n.dim(e), m.dim(e));
            if f2.rows() != m.dim(e) || g2.rows() != n.dim(e) {
                continue;
            }
            if m.sq(i, d).mul(&f) != f2.mul(&l.sq(i, d)) {
                report.failures.push((d, format!("inject does not commute with Sq{i}")));
            }
            if n.sq(i, d).mul(&g) != g2.mul(&m.sq(i, d)) {
                report
                    .failures
                    .push((d, format!("surject does not commute with Sq{i}")));
            }
        }
    }
    report
}

/// True when the two modules agree up to a change of basis in each degree as
/// far as dims and action ranks go.
pub fn same_shape(a: &GradedA1Module, b: &GradedA1Module) -> bool {
    let lo = a.min_degree.min(b.min_degree);
    let hi = a.max_degree().max(b.max_degree());
    (lo..=hi).all(|d| {
        a.dim(d) == b.dim(d)
            && [1u32, 2].iter().all(|&i| a.sq(i, d).rank() == b.sq(i, d).rank())
            && sq_words(6)
                .iter()
                .all(|w| a.word_matrix(w, d).rank() == b.word_matrix(w, d).rank())
    })
}
