//! Property suites over random inputs.

mod common;

use a1ext::classify::FinAbGroup;
use a1ext::modcat::standard_module;
use a1ext::resolve::{ext_chart, minimal_resolution, ExtChart};
use common::*;

#[test]
fn adem_reduction_is_idempotent_and_additive() {
    suite_adem(CASES).unwrap();
}

#[test]
fn builtins_and_tensor_products_validate() {
    suite_validate(CASES).unwrap();
}

#[test]
fn resolutions_are_exact_and_minimal() {
    suite_resolver(CASES).unwrap();
}

#[test]
fn resolver_matches_brute_force_ext() {
    suite_oracle(CASES).unwrap();
}

#[test]
fn brute_force_oracle_reproduces_ko_ring() {
    let m = standard_module("F2", 12).unwrap();
    let ext = brute_force_ext(&m, 3, 8);
    for s in 0..=3u32 {
        for t in 0..=8 {
            let stem = t - s as i32;
            let want = ko_ring_dim(stem, s);
            assert_eq!(ext.get(&(s, t)).copied().unwrap_or(0), want, "(s,t) = ({s},{t})");
        }
    }
}

#[test]
fn chart_json_round_trips() {
    for name in ["F2", "Q", "J", "RP(6,1)", "BC2n(2)"] {
        let m = standard_module(name, 14).unwrap();
        let c = ext_chart(&minimal_resolution(&m, 5, 14).unwrap());
        let back = ExtChart::from_json(&c.to_json()).unwrap();
        assert_eq!(back.to_json(), c.to_json(), "{name}");
    }
}

#[test]
fn group_display_parses_back() {
    use proptest::prelude::*;
    let mut runner = proptest::test_runner::TestRunner::new(proptest::test_runner::Config {
        cases: CASES,
        failure_persistence: None,
        ..Default::default()
    });
    runner
        .run(&(0u32..4, prop::collection::vec(1u32..6, 0..5)), |(rank, logs)| {
            let g = FinAbGroup::new(rank, logs.iter().map(|l| 1u64 << l).collect());
            let back: FinAbGroup = g.to_string().parse().unwrap();
            prop_assert_eq!(back, g);
            Ok(())
        })
        .unwrap();
}

mod ahss_properties {
    use super::CASES;
    use a1ext::ahss::{
        ko4_ahss, ko4_ahss_with, kunneth, maximal_torsion, resolve_extensions, space_builtin, AhssOptions,
        ExtensionPolicy,
    };
    use a1ext::modcat::same_shape;
    use proptest::prelude::*;

    const FACTORS: &[&str] = &["RPinf", "RP(3)", "RP(4)", "CPinf", "BC2n(1)", "BC2n(2)", "BC2n(3)"];

    proptest! {
        #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn kunneth_is_associative(i in 0..FACTORS.len(), j in 0..FACTORS.len(), k in 0..FACTORS.len()) {
            let t = 9;
            let (a, b, c) = (space_builtin(FACTORS[i], t).unwrap(), space_builtin(FACTORS[j], t).unwrap(), space_builtin(FACTORS[k], t).unwrap());
            let left = kunneth(&kunneth(&a, &b), &c);
            let right = kunneth(&a, &kunneth(&b, &c));
            prop_assert_eq!(left.top, right.top);
            for d in 0..=left.top {
                prop_assert_eq!(left.hz(d), right.hz(d), "H^{}(Z)", d);
                prop_assert_eq!(left.h2(d), right.h2(d), "H^{}(F2)", d);
            }
            prop_assert!(same_shape(&left.mod2.restrict(left.top), &right.mod2.restrict(right.top)));
        }

        #[test]
        fn extensions_conserve_torsion_length(k in 1usize..4, n in 3i32..7) {
            let x = a1ext::ahss::space_expression(&format!("RPinf^{k}"), n + 8).unwrap();
            let r = ko4_ahss(&x, n).unwrap();
            if r.is_exact() {
                let total: u32 = r.entries.iter().map(|e| e.torsion_log2.lo).sum();
                let g = resolve_extensions(&r, ExtensionPolicy::MaximalTorsion).unwrap();
                prop_assert_eq!(g.length(), total);
                prop_assert_eq!(g.rank, r.rank);
            }
        }

        #[test]
        fn greedy_extension_has_requested_length(layers in prop::collection::vec(0u32..5, 0..6)) {
            let g = maximal_torsion(&layers);
            prop_assert_eq!(g.length(), layers.iter().sum::<u32>());
            prop_assert!(g.torsion.len() >= layers.iter().copied().max().unwrap_or(0) as usize);
        }

        #[test]
        fn sanity_mode_is_the_naive_sum(i in 0..FACTORS.len(), j in 0..FACTORS.len(), n in 2i32..6) {
            let x = kunneth(&space_builtin(FACTORS[i], n + 9).unwrap(), &space_builtin(FACTORS[j], n + 9).unwrap());
            let naive = ko4_ahss_with(&x, n, AhssOptions { differentials: false }).unwrap();
            let full = ko4_ahss(&x, n).unwrap();
            let e2: u32 = naive.entries.iter().map(|e| e.e2.length()).sum();
            prop_assert_eq!(naive.torsion_bounds, (e2, e2));
            prop_assert!(full.torsion_bounds.1 <= e2);
            prop_assert!(full.torsion_bounds.0 <= full.torsion_bounds.1);
        }
    }
}

mod ordering {
    use super::common::small_module;
    use super::CASES;
    use a1ext::f2core::F2Matrix;
    use a1ext::modcat::{validate, GradedA1Module};
    use a1ext::resolve::{ext_chart, minimal_resolution};
    use proptest::prelude::*;

    /// Relabels the basis of every degree by rotating it `seed` places.
    fn permuted(m: &GradedA1Module, seed: usize) -> GradedA1Module {
        let perm = |d: i32| -> F2Matrix {
            let n = m.dim(d);
            let mut p = F2Matrix::zeros(n, n);
            for i in 0..n {
                p.set(
                    (i as i64 + seed as i64 + d as i64).rem_euclid(n as i64) as usize,
                    i,
                    true,
                );
            }
            p
        };
        let mut out = m.clone();
        out.labels = None;
        for (idx, d) in m.degrees().enumerate() {
            for (i, ops) in [(1, &mut out.sq1), (2, &mut out.sq2)] {
                if idx < ops.len() && ops[idx].rows() > 0 && ops[idx].cols() > 0 {
                    ops[idx] = perm(d + i).mul(&ops[idx]).mul(&perm(d).transpose());
                }
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn chart_dims_ignore_basis_order(m in small_module(), seed in 0usize..5) {
            let p = permuted(&m, seed);
            prop_assert!(validate(&p).ok());
            let tmax = m.max_degree() + 5;
            let a = ext_chart(&minimal_resolution(&m, 3, tmax).unwrap());
            let b = ext_chart(&minimal_resolution(&p, 3, tmax).unwrap());
            prop_assert_eq!(a.dims(), b.dims());
        }
    }
}
