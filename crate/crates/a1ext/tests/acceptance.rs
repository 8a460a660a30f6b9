//! Acceptance report: one PASS/FAIL line per criterion, followed by details.
//! Runs as a plain binary so the report is always printed.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use a1ext::adamschart::{mth_pipeline, MthCase};
use a1ext::classify::{
    bosonic_classification, fermionic_classification, BosonicSymmetry, Certificate, FermionicCase, FinAbGroup,
};
use a1ext::modcat::standard_module;
use a1ext::resolve::{ext_chart, minimal_resolution, ExtChart};
use a1ext::steenrod::{adem_reduce, admissible_basis, SteenrodElement};
use a1ext::thomspaces::virtual_bundle_sw;
use common::*;

/// Criteria that fail for a documented reason; see the README.
const DOCUMENTED_FAILURES: &[(u32, &str)] = &[(
    4,
    "MTG+ pi_0: the module model has a permanent class at (0,0) and reads Z/2 where 0 is expected",
)];

type Suite = fn(u32) -> Result<(), String>;
type Criterion = (u32, &'static str, fn() -> Report);

struct Report {
    ok: bool,
    details: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report {
            ok: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, what: String) {
        if !cond {
            self.ok = false;
        }
        self.details
            .push(format!("{} {what}", if cond { "ok  " } else { "FAIL" }));
    }
}

fn g(s: &str) -> FinAbGroup {
    s.parse().unwrap()
}

fn groups(list: &[&str]) -> Vec<FinAbGroup> {
    list.iter().map(|s| g(s)).collect()
}

fn adem_and_a1() -> Report {
    let mut r = Report::new();
    let cases: [(&[u32], &[&[u32]]); 4] = [
        (&[1, 2], &[&[3]]),
        (&[3, 2], &[]),
        (&[2, 5], &[&[6, 1]]),
        (&[2, 3], &[&[5], &[4, 1]]),
    ];
    for (word, want) in cases {
        let got = adem_reduce(word);
        let expect = want
            .iter()
            .fold(SteenrodElement::zero(), |acc, m| acc.add(&SteenrodElement::monomial(m)));
        r.check(got == expect, format!("Sq{word:?} = {}", got));
    }
    let profile: Vec<usize> = (0..=6).map(|d| admissible_basis(d, true).len()).collect();
    r.check(
        profile == vec![1, 1, 1, 2, 1, 1, 1],
        format!("A(1) degree profile {profile:?}"),
    );
    r.check(profile.iter().sum::<usize>() == 8, "A(1) has 8 basis elements".into());
    r
}

fn ko_chart() -> ExtChart {
    let m = standard_module("F2", 24).unwrap();
    ext_chart(&minimal_resolution(&m, 10, 22).unwrap())
}

fn ext_of_f2() -> Report {
    let mut r = Report::new();
    let c = ko_chart();
    let mut mismatches = Vec::new();
    for stem in 0..=12 {
        for s in 0..=6u32 {
            if c.dim(stem, s) != ko_ring_dim(stem, s) {
                mismatches.push((stem, s));
            }
        }
    }
    r.check(
        mismatches.is_empty(),
        format!("dims agree with the ring presentation on 0..12 x 0..6 {mismatches:?}"),
    );

    let dots: BTreeSet<(i32, u32)> = [
        (0, 0),
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (0, 5),
        (1, 1),
        (2, 2),
        (4, 3),
        (4, 4),
        (4, 5),
        (8, 4),
        (8, 5),
        (9, 5),
    ]
    .into();
    let window: BTreeSet<(i32, u32)> = c
        .dims()
        .into_iter()
        .filter(|&((stem, s), n)| stem <= 9 && s <= 5 && n > 0)
        .map(|(k, _)| k)
        .collect();
    r.check(window == dots, format!("E2 dots on stems 0..9, s 0..5: {window:?}"));
    let single = c
        .dims()
        .iter()
        .filter(|&(&(stem, s), _)| stem <= 9 && s <= 5)
        .all(|(_, &n)| n == 1);
    r.check(single, "every dot in the window is one copy of Z/2".into());

    let h0: Vec<(i32, u32)> = vec![(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (4, 3), (4, 4), (8, 4)];
    let mut h0_seen = Vec::new();
    let mut h1_seen = Vec::new();
    for stem in 0..=9 {
        for s in 0..5u32 {
            if !c.h0_matrix(stem, s).is_zero() {
                h0_seen.push((stem, s));
            }
            if stem < 9 && !c.h1_matrix(stem, s).is_zero() {
                h1_seen.push((stem, s));
            }
        }
    }
    r.check(h0_seen == h0, format!("h0 edges from {h0_seen:?}"));
    r.check(
        h1_seen == vec![(0, 0), (1, 1), (8, 4)],
        format!("h1 edges from {h1_seen:?}"),
    );

    let mut periodic = true;
    for stem in 0..=12 - 8 {
        for s in 0..=6u32 - 4 {
            periodic &= c.dim(stem, s) == c.dim(stem + 8, s + 4);
        }
    }
    for stem in 0..=12 {
        for s in 0..=2u32 {
            periodic &= c.dim(stem, s) == c.dim(stem + 8, s + 4);
        }
    }
    r.check(periodic, "dim Ext^{s,t} = dim Ext^{s+4,t+12}".into());
    r
}

fn pipeline(r: &mut Report, case: &str, stems: &[i32], want: &[&str]) {
    let t0 = Instant::now();
    let case: MthCase = case.parse().unwrap();
    match mth_pipeline(&case, stems) {
        Ok(res) => {
            let got: Vec<FinAbGroup> = stems.iter().map(|k| res.groups[k].clone()).collect();
            let shown: Vec<String> = got.iter().map(|x| x.to_string()).collect();
            r.check(
                got == groups(want),
                format!(
                    "{case} stems {stems:?}: {} ({:.1}s)",
                    shown.join(", "),
                    t0.elapsed().as_secs_f64()
                ),
            );
        }
        Err(e) => r.check(false, format!("{case}: {e}")),
    }
}

fn ko_homotopy() -> Report {
    let mut r = Report::new();
    pipeline(
        &mut r,
        "ko",
        &[0, 1, 2, 3, 4, 5, 6, 7],
        &["Z", "Z/2", "Z/2", "0", "Z", "0", "0", "0"],
    );
    r
}

fn mth_tables() -> Report {
    let mut r = Report::new();
    let stems = [0, 1, 2, 3, 4];
    pipeline(&mut r, "pin+", &stems, &["Z/2", "Z/2", "Z/8", "0", "0"]);
    pipeline(&mut r, "pin-", &stems, &["Z/2", "0", "Z/2", "Z/2", "Z/16"]);
    pipeline(&mut r, "pinc-", &stems, &["Z/2", "0", "Z+Z/2", "0", "Z/2"]);
    pipeline(&mut r, "pinc+", &stems, &["Z/2", "0", "Z", "Z/2", "(Z/2)^3"]);
    pipeline(&mut r, "g+", &stems, &["0", "0", "Z/2", "0", "Z/2+Z/4"]);
    r
}

fn charge_family() -> Report {
    let mut r = Report::new();
    for n in 2..=4u32 {
        let a = format!("Z/{}", 1u32 << n);
        let b = if n == 2 {
            "0".to_string()
        } else {
            format!("Z/{}", 1u32 << (n - 2))
        };
        pipeline(&mut r, &format!("spinz2n({n})"), &[1, 2, 3, 4], &[&a, "0", &b, "Z"]);
    }
    pipeline(&mut r, "spinz2n(2)", &[5], &["Z/16"]);
    r
}

fn bosonic() -> Report {
    let mut r = Report::new();
    let tables = [
        (BosonicSymmetry::NoneT, ["0", "Z/2", "0", "(Z/2)^2", "Z/2"]),
        (BosonicSymmetry::TU1, ["0", "(Z/2)^2", "0", "(Z/2)^4", "Z/2"]),
        (BosonicSymmetry::U1, ["Z", "0", "Z^2", "0", "Z^2+Z/2"]),
    ];
    for (sym, want) in tables {
        let got: Vec<FinAbGroup> = (0..=4).map(|d| bosonic_classification(sym, d).unwrap()).collect();
        let shown: Vec<String> = got.iter().map(|x| x.to_string()).collect();
        r.check(got == groups(&want), format!("{sym:?}: {}", shown.join(", ")));
    }
    r
}

fn fermionic() -> Report {
    let mut r = Report::new();
    let c2 = fermionic_classification(&FermionicCase::C2Dim4).unwrap();
    r.check(
        c2.group == Some(FinAbGroup::zero()) && c2.certificate == Certificate::Exact,
        format!("C2, 3+1: {:?}", c2.group),
    );
    let c2c4 = fermionic_classification(&FermionicCase::C2xC4Dim4).unwrap();
    let cokernel = c2c4
        .notes
        .iter()
        .any(|n| n.contains("order 2^5") && n.contains("order 2^4"));
    r.check(
        c2c4.certificate == Certificate::Nontrivial && cokernel,
        format!("C2xC4, 3+1: {:?}; {}", c2c4.certificate, c2c4.notes.join("; ")),
    );
    for (k, want) in [(1, "Z/8"), (2, "(Z/8)^2+Z/4"), (3, "(Z/8)^3+(Z/4)^3+Z/2")] {
        let res = fermionic_classification(&FermionicCase::C2kDim3(k)).unwrap();
        let shown = res.group.as_ref().map_or("bounds only".into(), |x| x.to_string());
        r.check(res.group == Some(g(want)), format!("(RPinf)^{k}, 2+1: {shown}"));
    }
    r
}

fn properties() -> Report {
    let mut r = Report::new();
    let suites: [(&str, Suite); 4] = [
        ("Adem idempotence and degree additivity", suite_adem),
        ("validation of builtins and tensor products", suite_validate),
        ("resolver d.d = 0, exactness, minimality", suite_resolver),
        ("minimal vs brute-force Ext", suite_oracle),
    ];
    for (name, f) in suites {
        let t0 = Instant::now();
        let res = f(CASES);
        r.check(
            res.is_ok(),
            format!(
                "{name}: {CASES} cases ({:.1}s){}",
                t0.elapsed().as_secs_f64(),
                res.err().map_or(String::new(), |e| format!(": {e}"))
            ),
        );
    }
    r
}

fn sw_oracle() -> Report {
    let mut r = Report::new();
    let trivial: Vec<u32> = (1..=8)
        .filter(|&k| virtual_bundle_sw(2, &[1, 2], k, 4).unwrap().is_one_through(4))
        .collect();
    r.check(
        trivial == vec![4, 8],
        format!("w(k lambda_12) = 1 through degree 4 for k in {trivial:?}"),
    );
    let nontrivial = (1..=3).all(|k| !virtual_bundle_sw(2, &[1, 2], k, 4).unwrap().is_one_through(4));
    r.check(nontrivial, "w(k lambda_12) is nontrivial for k = 1, 2, 3".into());
    let triple = virtual_bundle_sw(3, &[1, 2, 3], 2, 4).unwrap().is_one_through(4);
    r.check(triple, "w(2 lambda_123) = 1 through degree 4".into());
    r
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "Adem relations and A(1) basis", adem_and_a1),
        (2, "Ext of F2 over A(1)", ext_of_f2),
        (3, "homotopy of ko", ko_homotopy),
        (4, "Thom spectrum tables", mth_tables),
        (5, "charge 2^n family", charge_family),
        (6, "bosonic tables", bosonic),
        (7, "fermionic AHSS", fermionic),
        (8, "property suites", properties),
        (9, "Stiefel-Whitney oracle", sw_oracle),
    ];
    let mut failed = BTreeSet::new();
    for (id, title, f) in criteria {
        let t0 = Instant::now();
        let rep = f();
        println!(
            "criterion {id}: {} {title} ({:.1}s)",
            if rep.ok { "PASS" } else { "FAIL" },
            t0.elapsed().as_secs_f64()
        );
        for d in &rep.details {
            println!("    {d}");
        }
        if !rep.ok {
            failed.insert(id);
        }
    }
    let documented: BTreeSet<u32> = DOCUMENTED_FAILURES.iter().map(|&(id, _)| id).collect();
    for (id, why) in DOCUMENTED_FAILURES {
        println!("documented failure {id}: {why}");
    }
    if failed != documented {
        println!("acceptance: failing criteria {failed:?} differ from documented {documented:?}");
        std::process::exit(1);
    }
    println!("acceptance: report matches expectations");
}
