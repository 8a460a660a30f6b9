//! Shared generators, oracles and property suites for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use a1ext::f2core::{F2Matrix, F2Vec};
use a1ext::modcat::{self, direct_sum, free_quotient, standard_module, suspend, tensor_product, GradedA1Module};
use a1ext::resolve::{exactness_report, minimal_resolution};
use a1ext::steenrod::{a1_mul_basis, adem_reduce, product, AdmissibleMonomial, SteenrodElement, A1_DEGREES, A1_DIM};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

/// Small finite modules used as building blocks.
const PIECES: &[&str] = &["F2", "M", "J", "Q", "Ceta", "RP(2,1)", "RP(3,1)", "RP(4,2)", "A1"];

/// Homogeneous elements of A(1) of positive degree, as basis bitmasks.
fn homogeneous_element() -> impl Strategy<Value = u8> {
    (1u32..=6, any::<u8>()).prop_map(|(d, bits)| {
        let ks: Vec<usize> = (0..A1_DIM).filter(|&k| A1_DEGREES[k] == d).collect();
        let mut x = 0u8;
        for (i, &k) in ks.iter().enumerate() {
            if bits >> i & 1 == 1 {
                x |= 1 << k;
            }
        }
        if x == 0 {
            1 << ks[0]
        } else {
            x
        }
    })
}

/// Valid finite A(1)-modules of total dimension at most 12.
pub fn small_module() -> impl Strategy<Value = GradedA1Module> {
    let cyclic = prop::collection::vec(homogeneous_element(), 0..3).prop_map(|rels| free_quotient(&rels));
    let sum = prop::collection::vec((0..PIECES.len(), 0i32..4), 1..4).prop_map(|parts| {
        let mut m = GradedA1Module::zero();
        for (i, shift) in parts {
            let piece = suspend(&standard_module(PIECES[i], 20).unwrap(), shift);
            if m.total_dim() + piece.total_dim() <= 12 {
                m = if m.total_dim() == 0 {
                    piece
                } else {
                    direct_sum(&m, &piece)
                };
            }
        }
        m
    });
    let tensor = (0..5usize, 0..5usize).prop_map(|(i, j)| {
        let small = ["F2", "Ceta", "Q", "RP(2,1)", "M"];
        tensor_product(
            &standard_module(small[i], 20).unwrap(),
            &standard_module(small[j], 20).unwrap(),
            20,
        )
    });
    let stunted =
        (-2i32..4, 0i32..7).prop_map(|(k, len)| standard_module(&format!("RP({},{k})", k + len), 20).unwrap());
    prop_oneof![cyclic, sum, tensor.prop_filter("dim", |m| m.total_dim() <= 12), stunted]
        .prop_filter("nonzero", |m| m.total_dim() > 0)
}

/// Ext dimensions from a deliberately non-minimal resolution: every stage is free
/// on a full basis of the previous kernel, and Ext is the cohomology of the
/// resulting Hom complex. Only degrees `t <= tmax` are built.
pub fn brute_force_ext(m: &GradedA1Module, smax: u32, tmax: i32) -> BTreeMap<(u32, i32), usize> {
    let lo = m.min_degree;
    // Stage 0 generators: a basis of M. Each generator has a degree and an image vector.
    // gens[s][t] = list of images in stage s-1 (or in M for s = 0), as vectors.
    let mut gens: Vec<BTreeMap<i32, Vec<F2Vec>>> = Vec::new();
    let mut g0 = BTreeMap::new();
    for t in lo..=tmax {
        let d = m.dim(t);
        g0.insert(t, (0..d).map(|i| F2Vec::unit(d, i)).collect());
    }
    gens.push(g0);
    // Basis of stage s in degree t: (generator degree, generator index, A(1) basis index).
    let basis = |g: &BTreeMap<i32, Vec<F2Vec>>, t: i32| -> Vec<(i32, usize, usize)> {
        let mut v = Vec::new();
        for (&dg, list) in g {
            for (k, &deg) in A1_DEGREES.iter().enumerate() {
                if dg + deg as i32 == t {
                    for j in 0..list.len() {
                        v.push((dg, j, k));
                    }
                }
            }
        }
        v
    };
    for s in 0..=smax {
        // Boundary of stage s into stage s-1 (or M), degree by degree; its kernel generates stage s+1.
        let mut next = BTreeMap::new();
        for t in lo..=tmax {
            let src = basis(&gens[s as usize], t);
            let cols: Vec<F2Vec> = src
                .iter()
                .map(|&(dg, j, k)| {
                    let z = &gens[s as usize][&dg][j];
                    if s == 0 {
                        m.basis_action(k, dg).mul_vec(z)
                    } else {
                        let prev = &gens[s as usize - 1];
                        let tb = basis(prev, t);
                        let zb = basis(prev, dg);
                        let mut out = F2Vec::zeros(tb.len());
                        for i in z.ones() {
                            let (dh, h, kk) = zb[i];
                            let prod = a1_mul_basis(k, kk);
                            for r in (0..A1_DIM).filter(|r| prod >> r & 1 == 1) {
                                let pos = tb.iter().position(|&b| b == (dh, h, r)).unwrap();
                                out.flip(pos);
                            }
                        }
                        out
                    }
                })
                .collect();
            let rows = if s == 0 {
                m.dim(t)
            } else {
                basis(&gens[s as usize - 1], t).len()
            };
            let kernel = F2Matrix::from_columns(rows, &cols).kernel_basis();
            next.insert(t, kernel);
        }
        gens.push(next);
    }
    // Hom complex: delta_s sends generators of stage s to generators of stage s+1 via unit coefficients.
    let delta = |s: usize, t: i32| -> F2Matrix {
        let src_n = gens[s].get(&t).map_or(0, Vec::len);
        let tgt = gens[s + 1].get(&t).cloned().unwrap_or_default();
        let b = basis(&gens[s], t);
        let mut d = F2Matrix::zeros(tgt.len(), src_n);
        for (r, z) in tgt.iter().enumerate() {
            for i in z.ones() {
                let (dg, j, k) = b[i];
                if k == 0 && dg == t {
                    d.set(r, j, true);
                }
            }
        }
        d
    };
    let mut out = BTreeMap::new();
    for (s, stage) in gens.iter().enumerate().take(smax as usize + 1) {
        for t in lo..=tmax {
            let n = stage.get(&t).map_or(0, Vec::len);
            let cocycles = n - delta(s, t).rank();
            let boundaries = if s == 0 { 0 } else { delta(s - 1, t).rank() };
            let e = cocycles - boundaries;
            if e > 0 {
                out.insert((s as u32, t), e);
            }
        }
    }
    out
}

/// Bidegree dimensions of `Ext_{A(1)}(F2, F2)` from its presentation
/// `F2[h0, h1, a, b] / (h0 h1, h1^3, h1 a, a^2 + h0^2 b)` with `h0` in `(s,t) = (1,1)`,
/// `h1` in `(1,2)`, `a` in `(3,7)`, `b` in `(4,12)`. Basis: `h0^i b^k`, `h1 b^k`,
/// `h1^2 b^k`, `a h0^i b^k`.
pub fn ko_ring_dim(stem: i32, s: u32) -> usize {
    let mut n = 0;
    for k in 0..=(s / 4) {
        let (rs, rstem) = (s - 4 * k, stem - 8 * k as i32);
        if rstem == 0 {
            n += 1;
        }
        if rs == 1 && rstem == 1 {
            n += 1;
        }
        if rs == 2 && rstem == 2 {
            n += 1;
        }
        if rs >= 3 && rstem == 4 {
            n += 1;
        }
    }
    n
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn word() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..7, 0..5)
}

/// Reducing twice changes nothing, every term is admissible, and degrees add.
pub fn suite_adem(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(word(), word()), |(a, b)| {
            let x = adem_reduce(&a);
            for term in &x.terms {
                prop_assert!(AdmissibleMonomial::is_admissible(&term.0));
                prop_assert_eq!(
                    adem_reduce(&term.0),
                    SteenrodElement {
                        terms: [term.clone()].into()
                    }
                );
                prop_assert_eq!(term.degree(), a.iter().sum::<u32>());
            }
            let y = adem_reduce(&b);
            let xy = product(&x, &y);
            let mut ab = a.clone();
            ab.extend(&b);
            prop_assert_eq!(&xy, &adem_reduce(&ab));
            if let (Some(dx), Some(dy)) = (x.degree(), y.degree()) {
                if !xy.is_zero() {
                    prop_assert_eq!(xy.degree(), Some(dx + dy));
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Builtins and tensor products of builtins satisfy the A(1) relations.
pub fn suite_validate(cases: u32) -> Result<(), String> {
    let names = modcat::BUILTIN_EXAMPLES;
    for n in names {
        let m = standard_module(n, 16).map_err(|e| e.to_string())?;
        if !modcat::validate(&m).ok() {
            return Err(format!("builtin {n} fails validation"));
        }
    }
    runner(cases)
        .run(&(0..names.len(), 0..names.len(), 4i32..12), |(i, j, t)| {
            let a = standard_module(names[i], t).unwrap();
            let b = standard_module(names[j], t).unwrap();
            let p = tensor_product(&a, &b, t);
            let rep = modcat::validate(&p);
            prop_assert!(rep.ok(), "{} (x) {}: {:?}", names[i], names[j], rep.first_failure());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// d.d = 0, exactness and minimality of resolutions of random modules.
pub fn suite_resolver(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(small_module(), 2u32..5), |(m, smax)| {
            let tmax = m.max_degree() + 6;
            let r = minimal_resolution(&m, smax, tmax).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let rep = exactness_report(&r);
            prop_assert!(rep.ok(), "{}: {:?}", m.name, rep.failures);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Minimal resolution agrees with the brute-force oracle.
pub fn suite_oracle(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(small_module(), 1u32..4), |(m, smax)| {
            let tmax = (m.min_degree + 6).min(10);
            let r = minimal_resolution(&m, smax, tmax).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let oracle = brute_force_ext(&m, smax, tmax);
            for s in 0..=smax {
                for t in m.min_degree..=tmax {
                    let want = oracle.get(&(s, t)).copied().unwrap_or(0);
                    prop_assert_eq!(r.ext_dim(s, t), want, "{} at (s,t) = ({},{})", m.name, s, t);
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}
