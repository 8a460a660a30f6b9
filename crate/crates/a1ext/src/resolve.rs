//! Minimal free resolutions over A(1) and the Ext charts they determine.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2core::{F2Matrix, F2Vec, Subspace};
use crate::modcat::GradedA1Module;
use crate::steenrod::{a1_basis_element, a1_mul, A1Elt, A1_DEGREES, A1_DIM};

/// Image of a generator under the differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Stage 0: an element of the module in the generator's degree.
    Module(F2Vec),
    /// Stage s > 0: A(1) coefficients on the stage s-1 generators.
    Free(Vec<A1Elt>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stage {
    pub degrees: Vec<i32>,
    pub boundaries: Vec<Boundary>,
}

impl Stage {
    /// Indices of the generators of degree `t`.
    pub fn in_degree(&self, t: i32) -> impl Iterator<Item = usize> + '_ {
        self.degrees
            .iter()
            .enumerate()
            .filter(move |(_, &d)| d == t)
            .map(|(j, _)| j)
    }
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub module: GradedA1Module,
    pub smax: u32,
    pub tmax: i32,
    pub stages: Vec<Stage>,
    actions: HashMap<(usize, i32), F2Matrix>,
}

impl FreeResolution {
    fn action(&mut self, k: usize, d: i32) -> F2Matrix {
        let m = &self.module;
        self.actions
            .entry((k, d))
            .or_insert_with(|| m.basis_action(k, d))
            .clone()
    }

    /// Basis of the stage-`s` free module in degree `t`: (generator, A(1) basis index).
    pub fn basis(&self, s: usize, t: i32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, &g) in self.stages[s].degrees.iter().enumerate() {
            for (k, &deg) in A1_DEGREES.iter().enumerate() {
                if g + deg as i32 == t {
                    out.push((j, k));
                }
            }
        }
        out
    }

    fn free_to_vec(&self, s: usize, t: i32, coeffs: &[A1Elt]) -> F2Vec {
        let basis = self.basis(s, t);
        let mut v = F2Vec::zeros(basis.len());
        for (i, &(j, k)) in basis.iter().enumerate() {
            if coeffs.get(j).is_some_and(|c| c >> k & 1 == 1) {
                v.set(i, true);
            }
        }
        v
    }

    fn vec_to_free(&self, s: usize, t: i32, v: &F2Vec) -> Vec<A1Elt> {
        let basis = self.basis(s, t);
        let mut c = vec![0u8; self.stages[s].degrees.len()];
        for i in v.ones() {
            let (j, k) = basis[i];
            c[j] |= 1 << k;
        }
        c
    }

    /// Matrix of the differential out of stage `s` in degree `t`; the target
    /// is the module for `s = 0`.
    pub fn differential(&mut self, s: usize, t: i32) -> F2Matrix {
        let basis = self.basis(s, t);
        let rows = if s == 0 {
            self.module.dim(t)
        } else {
            self.basis(s - 1, t).len()
        };
        let mut cols = Vec::with_capacity(basis.len());
        for &(j, k) in &basis {
            let g = self.stages[s].degrees[j];
            let col = match self.stages[s].boundaries[j].clone() {
                Boundary::Module(v) => self.action(k, g).mul_vec(&v),
                Boundary::Free(c) => {
                    let prod: Vec<A1Elt> = c.iter().map(|&x| a1_mul(1 << k, x)).collect();
                    self.free_to_vec(s - 1, t, &prod)
                }
            };
            cols.push(col);
        }
        F2Matrix::from_columns(rows, &cols)
    }

    /// Number of stage-`s` generators in degree `t`, i.e. `dim Ext^{s,t}`.
    pub fn ext_dim(&self, s: u32, t: i32) -> usize {
        self.stages.get(s as usize).map_or(0, |st| st.in_degree(t).count())
    }
}

fn sort_key(v: &F2Vec) -> (usize, Vec<usize>) {
    (v.count_ones(), v.ones().collect())
}

/// Minimal resolution through homological degree `smax` and internal degree `tmax`.
pub fn minimal_resolution(m: &GradedA1Module, smax: u32, tmax: i32) -> Result<FreeResolution> {
    if let Some(t) = m.truncation {
        if tmax > t {
            return Err(Error::range(
                &m.name,
                t + 1,
                format!("module is only faithful through degree {t} but tmax = {tmax}"),
            ));
        }
    }
    let mut r = FreeResolution {
        module: m.clone(),
        smax,
        tmax,
        stages: vec![Stage::default(); smax as usize + 1],
        actions: HashMap::new(),
    };
    if m.total_dim() == 0 {
        return Ok(r);
    }
    let mut low = m.min_degree;
    for s in 0..=smax as usize {
        for t in low..=tmax {
            let (targets, ambient): (Vec<F2Vec>, usize) = if s == 0 {
                let n = m.dim(t);
                ((0..n).map(|i| F2Vec::unit(n, i)).collect(), n)
            } else {
                let d = r.differential(s - 1, t);
                (d.kernel_basis(), d.cols())
            };
            if targets.is_empty() {
                continue;
            }
            let image = r.differential(s, t);
            let mut span = Subspace::new(ambient);
            for c in 0..image.cols() {
                span.insert(&image.column(c));
            }
            let mut targets = targets;
            targets.sort_by_key(sort_key);
            for v in targets {
                if span.insert(&v) {
                    let b = if s == 0 {
                        Boundary::Module(v)
                    } else {
                        Boundary::Free(r.vec_to_free(s - 1, t, &v))
                    };
                    r.stages[s].degrees.push(t);
                    r.stages[s].boundaries.push(b);
                }
            }
        }
        match r.stages[s].degrees.iter().min() {
            Some(&d) => low = d + 1,
            None => break,
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub failures: Vec<(u32, i32, String)>,
}

impl ExactnessReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `d d = 0`, exactness (surjectivity onto the module at stage 0) and
/// minimality within the bounds.
pub fn exactness_report(r: &FreeResolution) -> ExactnessReport {
    let mut r = r.clone();
    let mut rep = ExactnessReport::default();
    let lo = r.module.min_degree;
    let top = r.stages.iter().rposition(|st| !st.degrees.is_empty());
    let Some(top) = top else {
        if r.module.total_dim() > 0 {
            rep.failures.push((0, lo, "no generators".into()));
        }
        return rep;
    };
    for s in 0..=r.smax as usize {
        for (j, b) in r.stages[s].boundaries.iter().enumerate() {
            if let Boundary::Free(c) = b {
                if c.iter().any(|x| x & 1 == 1) {
                    rep.failures.push((
                        s as u32,
                        r.stages[s].degrees[j],
                        "boundary has a unit coefficient".into(),
                    ));
                }
            }
        }
    }
    for t in lo..=r.tmax {
        let d0 = r.differential(0, t);
        if d0.rank() != r.module.dim(t) {
            rep.failures.push((0, t, "not surjective onto the module".into()));
        }
        for s in 1..=r.smax as usize {
            if s > top + 1 {
                break;
            }
            let lower = r.differential(s - 1, t);
            let upper = r.differential(s, t);
            if !lower.mul(&upper).is_zero() {
                rep.failures.push((s as u32, t, "d d is nonzero".into()));
            }
            if upper.rank() + lower.rank() != lower.cols() {
                rep.failures.push((s as u32, t, "homology is nonzero".into()));
            }
        }
    }
    rep
}

/// A generator of a minimal resolution: homological degree, internal degree, index.
pub type DotId = (u32, i32, usize);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtChart {
    pub name: String,
    pub smax: u32,
    pub tmax: i32,
    pub dots: BTreeSet<DotId>,
    pub h0: BTreeSet<(DotId, DotId)>,
    pub h1: BTreeSet<(DotId, DotId)>,
    /// Classes of the Ext ring named when the module is F2.
    #[serde(default)]
    pub named: BTreeMap<String, (u32, i32)>,
    /// Per stem, how far below the computed top the readout is unreliable.
    #[serde(default)]
    pub cuts: BTreeMap<i32, u32>,
    /// Adams differentials already applied, in order.
    #[serde(default)]
    pub differentials: Vec<crate::adamschart::DifferentialSpec>,
}

impl ExtChart {
    pub fn dim(&self, stem: i32, s: u32) -> usize {
        self.dots_at(stem, s).len()
    }

    pub fn dots_at(&self, stem: i32, s: u32) -> Vec<DotId> {
        let t = stem + s as i32;
        self.dots.range((s, t, 0)..=(s, t, usize::MAX)).copied().collect()
    }

    /// `(stem, s) -> dim` for every occupied bidegree.
    pub fn dims(&self) -> BTreeMap<(i32, u32), usize> {
        let mut out = BTreeMap::new();
        for &(s, t, _) in &self.dots {
            *out.entry((t - s as i32, s)).or_insert(0) += 1;
        }
        out
    }

    pub fn stems(&self) -> BTreeSet<i32> {
        self.dots.iter().map(|&(s, t, _)| t - s as i32).collect()
    }

    /// Largest `s` at which stem `n` is fully computed.
    pub fn reliable_top(&self, stem: i32) -> u32 {
        let by_t = (self.tmax - stem).max(-1);
        let top = (self.smax as i32).min(by_t);
        (top - *self.cuts.get(&stem).unwrap_or(&0) as i32).max(-1) as u32
    }

    /// Matrix of multiplication by `h0` from `(stem, s)` to `(stem, s+1)`.
    pub fn h0_matrix(&self, stem: i32, s: u32) -> F2Matrix {
        let src = self.dots_at(stem, s);
        let dst = self.dots_at(stem, s + 1);
        let mut m = F2Matrix::zeros(dst.len(), src.len());
        for (c, a) in src.iter().enumerate() {
            for (r, b) in dst.iter().enumerate() {
                if self.h0.contains(&(*a, *b)) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Matrix of multiplication by `h1` from `(stem, s)` to `(stem+1, s+1)`.
    pub fn h1_matrix(&self, stem: i32, s: u32) -> F2Matrix {
        let src = self.dots_at(stem, s);
        let dst = self.dots_at(stem + 1, s + 1);
        let mut m = F2Matrix::zeros(dst.len(), src.len());
        for (c, a) in src.iter().enumerate() {
            for (r, b) in dst.iter().enumerate() {
                if self.h1.contains(&(*a, *b)) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chart serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Reads dots and `h0`/`h1` edges off a minimal resolution.
pub fn ext_chart(r: &FreeResolution) -> ExtChart {
    let mut chart = ExtChart {
        name: r.module.name.clone(),
        smax: r.smax,
        tmax: r.tmax,
        ..Default::default()
    };
    let id = |s: usize, j: usize| -> DotId {
        let t = r.stages[s].degrees[j];
        let i = r.stages[s].degrees[..j].iter().filter(|&&d| d == t).count();
        (s as u32, t, i)
    };
    for (s, st) in r.stages.iter().enumerate() {
        for j in 0..st.degrees.len() {
            chart.dots.insert(id(s, j));
        }
        for (j, b) in st.boundaries.iter().enumerate() {
            let Boundary::Free(c) = b else { continue };
            for (jp, &x) in c.iter().enumerate() {
                if x >> 1 & 1 == 1 {
                    chart.h0.insert((id(s - 1, jp), id(s, j)));
                }
                if x >> 2 & 1 == 1 {
                    chart.h1.insert((id(s - 1, jp), id(s, j)));
                }
            }
        }
    }
    if r.module.total_dim() == 1 && r.module.dim(0) == 1 {
        for (name, s, t) in [("h0", 1, 1), ("h1", 1, 2), ("v", 3, 7), ("w", 4, 12)] {
            if r.ext_dim(s, t) > 0 {
                chart.named.insert(name.to_string(), (s, t));
            }
        }
    }
    chart
}

#[derive(Serialize)]
struct GeneratorJson {
    s: usize,
    t: i32,
    index: usize,
    boundary: Vec<BoundaryTermJson>,
}

#[derive(Serialize)]
struct BoundaryTermJson {
    target: usize,
    coefficient: Vec<Vec<Vec<u32>>>,
}

impl FreeResolution {
    /// Generators and differentials, coefficients as lists of admissible words.
    pub fn to_json(&self) -> String {
        let mut gens = Vec::new();
        for (s, st) in self.stages.iter().enumerate() {
            for (j, (&t, b)) in st.degrees.iter().zip(&st.boundaries).enumerate() {
                let boundary = match b {
                    Boundary::Module(v) => v
                        .ones()
                        .map(|i| BoundaryTermJson {
                            target: i,
                            coefficient: vec![vec![vec![]]],
                        })
                        .collect(),
                    Boundary::Free(c) => c
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(jp, &x)| BoundaryTermJson {
                            target: jp,
                            coefficient: (0..A1_DIM)
                                .filter(|k| x >> k & 1 == 1)
                                .map(|k| a1_basis_element(k).terms.iter().map(|m| m.0.clone()).collect())
                                .collect(),
                        })
                        .collect(),
                };
                gens.push(GeneratorJson {
                    s,
                    t,
                    index: j,
                    boundary,
                });
            }
        }
        serde_json::to_string_pretty(&serde_json::json!({
            "module": self.module.name,
            "smax": self.smax,
            "tmax": self.tmax,
            "generators": gens,
        }))
        .expect("resolution serializes")
    }
}
