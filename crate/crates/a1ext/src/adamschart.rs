//! Adams charts: differentials, collapse checks, homotopy readout and rendering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::FinAbGroup;
use crate::error::{Error, Result};
use crate::f2core::{F2Matrix, F2Vec, Subspace};
use crate::modcat::{parse_call, GradedA1Module};
use crate::resolve::{ext_chart, minimal_resolution, DotId, ExtChart};
use crate::thomspaces::{thom_module, twisted_bz_module, ThomKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DifferentialSpec {
    /// `d_page` of the given rank from `source = (stem, s)` to `target = (stem - 1, s + page)`.
    Explicit {
        page: u32,
        source: (i32, u32),
        target: (i32, u32),
        rank: usize,
    },
    /// Differentials induced by a Bockstein of order `2^(n-1)` joining cells `a` and `a + 1`
    /// for odd `a`; they act on page `n - 1` from the tower in stem `a + 1` to the tower in stem `a`.
    Bockstein { n: u32 },
}

impl fmt::Display for DifferentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DifferentialSpec::Explicit {
                page,
                source,
                target,
                rank,
            } => {
                write!(
                    f,
                    "d{page}: ({},{}) -> ({},{}) rank {rank}",
                    source.0, source.1, target.0, target.1
                )
            }
            DifferentialSpec::Bockstein { n } => write!(f, "bockstein({n})"),
        }
    }
}

/// An `h0`-chain of dots in one stem, bottom first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bar {
    pub stem: i32,
    pub dots: Vec<DotId>,
}

impl Bar {
    pub fn bottom(&self) -> u32 {
        self.dots[0].0
    }

    pub fn top(&self) -> u32 {
        self.dots[self.dots.len() - 1].0
    }
}

/// Rewrites the basis of every bidegree so that `h0` sends each dot to at most
/// one dot and each dot is hit by at most one dot. `h1` is transported along.
pub fn normalize(chart: &ExtChart) -> Result<ExtChart> {
    let mut bases: BTreeMap<(i32, u32), Vec<F2Vec>> = BTreeMap::new();
    let mut h0 = BTreeSet::new();
    let top = chart.smax;
    for stem in chart.stems() {
        let t_of = |s: u32| stem + s as i32;
        let maps: Vec<F2Matrix> = (0..=top).map(|s| chart.h0_matrix(stem, s)).collect();
        let mut prev: Vec<F2Vec> = Vec::new();
        for s in 0..=top {
            let d = chart.dim(stem, s);
            let mut basis: Vec<F2Vec> = Vec::new();
            let mut span = Subspace::new(d);
            if s > 0 {
                for (j, v) in prev.iter().enumerate() {
                    let w = maps[s as usize - 1].mul_vec(v);
                    if !w.is_zero() {
                        span.insert(&w);
                        h0.insert(((s - 1, t_of(s - 1), j), (s, t_of(s), basis.len())));
                        basis.push(w);
                    }
                }
            }
            // Births, elder vectors first: those dying soonest are added first.
            let mut composite = F2Matrix::identity(d);
            for b in s + 1..=top + 1 {
                let kernel = if b <= top {
                    composite = maps[b as usize - 1].mul(&composite);
                    composite.kernel_basis()
                } else {
                    (0..d).map(|i| F2Vec::unit(d, i)).collect()
                };
                for v in kernel {
                    if span.insert(&v) {
                        basis.push(v);
                    }
                }
            }
            if basis.len() != d {
                return Err(Error::Consistency(format!(
                    "normalize: stem {stem}, s={s}: basis of size {}",
                    basis.len()
                )));
            }
            bases.insert((stem, s), basis.clone());
            prev = basis;
        }
    }
    let mut h1 = BTreeSet::new();
    for (&(stem, s), src) in &bases {
        let Some(dst) = bases.get(&(stem + 1, s + 1)) else {
            continue;
        };
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let old = chart.h1_matrix(stem, s);
        let change = F2Matrix::from_columns(dst.len(), dst);
        for (j, v) in src.iter().enumerate() {
            let w = old.mul_vec(v);
            let coords = change
                .solve(&w)?
                .ok_or_else(|| Error::Consistency("normalize: h1 image outside span".into()))?;
            for i in coords.ones() {
                h1.insert(((s, stem + s as i32, j), (s + 1, stem + s as i32 + 2, i)));
            }
        }
    }
    Ok(ExtChart {
        h0,
        h1,
        ..chart.clone()
    })
}

/// `h0`-chains in one stem. Errors if a dot has two `h0` neighbours on one side.
pub fn bars(chart: &ExtChart, stem: i32) -> Result<Vec<Bar>> {
    let mut up: BTreeMap<DotId, DotId> = BTreeMap::new();
    let mut has_down = BTreeSet::new();
    for &(a, b) in &chart.h0 {
        if a.1 - a.0 as i32 != stem || !chart.dots.contains(&a) || !chart.dots.contains(&b) {
            continue;
        }
        if up.insert(a, b).is_some() || !has_down.insert(b) {
            return Err(Error::Consistency(format!(
                "stem {stem}: h0 is not in normal form at s={}; normalize the chart first",
                a.0
            )));
        }
    }
    let mut out = Vec::new();
    for s in 0..=chart.smax + 2 {
        for d in chart.dots_at(stem, s) {
            if has_down.contains(&d) {
                continue;
            }
            let mut dots = vec![d];
            while let Some(&n) = up.get(dots.last().unwrap()) {
                dots.push(n);
            }
            out.push(Bar { stem, dots });
        }
    }
    Ok(out)
}

/// `h0`-towers (bars reaching the reliable top) with bottom at or below `max_bottom`.
fn towers(chart: &ExtChart, stem: i32, max_bottom: u32) -> Result<Vec<Bar>> {
    let r = chart.reliable_top(stem);
    Ok(bars(chart, stem)?
        .into_iter()
        .filter(|b| b.top() >= r && b.bottom() <= max_bottom)
        .collect())
}

fn remove_dots(chart: &mut ExtChart, dots: &[DotId]) {
    for d in dots {
        chart.dots.remove(d);
    }
    let gone: BTreeSet<DotId> = dots.iter().copied().collect();
    chart.h0.retain(|(a, b)| !gone.contains(a) && !gone.contains(b));
    chart.h1.retain(|(a, b)| !gone.contains(a) && !gone.contains(b));
}

fn stem_count(chart: &ExtChart, stem: i32) -> usize {
    chart.dots.iter().filter(|&&(s, t, _)| t - s as i32 == stem).count()
}

/// Applies differentials in order. Errors on a missing dot, on a spec applied
/// twice, and if dots removed at sources and targets do not balance.
pub fn run_differentials(chart: &ExtChart, specs: &[DifferentialSpec]) -> Result<ExtChart> {
    let mut c = if chart.differentials.is_empty() {
        normalize(chart)?
    } else {
        chart.clone()
    };
    for spec in specs {
        if c.differentials.contains(spec) {
            return Err(Error::Consistency(format!("differential {spec} applied twice")));
        }
        match *spec {
            DifferentialSpec::Explicit {
                page,
                source,
                target,
                rank,
            } => {
                if page < 2 || target != (source.0 - 1, source.1 + page) {
                    return Err(Error::Parameter(format!(
                        "{spec}: target must be (stem-1, s+page) with page >= 2"
                    )));
                }
                let src = c.dots_at(source.0, source.1);
                let dst = c.dots_at(target.0, target.1);
                if rank == 0 || src.len() < rank || dst.len() < rank {
                    return Err(Error::Consistency(format!(
                        "{spec}: missing dot ({} at source, {} at target)",
                        src.len(),
                        dst.len()
                    )));
                }
                let before = (stem_count(&c, source.0), stem_count(&c, target.0));
                remove_dots(&mut c, &src[src.len() - rank..]);
                remove_dots(&mut c, &dst[dst.len() - rank..]);
                let after = (stem_count(&c, source.0), stem_count(&c, target.0));
                euler_check(spec, before, after)?;
            }
            DifferentialSpec::Bockstein { n } => {
                if n < 3 {
                    return Err(Error::Parameter(format!("{spec}: needs n >= 3")));
                }
                let page = n - 1;
                let mut a = 1;
                while c.tmax - (a + 1) >= c.smax as i32 {
                    let src = towers(&c, a + 1, 1)?;
                    let dst = towers(&c, a, 1)?;
                    let (Ok([src]), Ok([dst])) = (<[Bar; 1]>::try_from(src), <[Bar; 1]>::try_from(dst)) else {
                        return Err(Error::Consistency(format!(
                            "{spec}: missing dot: need exactly one low tower in stems {a} and {}",
                            a + 1
                        )));
                    };
                    let before = (stem_count(&c, a + 1), stem_count(&c, a));
                    let mut kill = Vec::new();
                    for &d in &src.dots {
                        if let Some(&e) = dst.dots.iter().find(|e| e.0 == d.0 + page) {
                            kill.push(d);
                            kill.push(e);
                        }
                    }
                    remove_dots(&mut c, &kill);
                    euler_check(spec, before, (stem_count(&c, a + 1), stem_count(&c, a)))?;
                    *c.cuts.entry(a + 1).or_insert(0) += page;
                    a += 2;
                }
            }
        }
        c.differentials.push(spec.clone());
    }
    Ok(c)
}

fn euler_check(spec: &DifferentialSpec, before: (usize, usize), after: (usize, usize)) -> Result<()> {
    if before.0 - after.0 != before.1 - after.1 {
        return Err(Error::Consistency(format!(
            "{spec}: removed {} source dots but {} target dots",
            before.0 - after.0,
            before.1 - after.1
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub page: u32,
    pub source: (i32, u32),
    pub target: (i32, u32),
    /// Why the derivation rule rules this differential out, if it does.
    pub excluded_by: Option<String>,
}

fn injective(m: &F2Matrix) -> bool {
    m.rank() == m.cols()
}

/// `h0^k` from `(stem, s)` to `(stem, s + k)`.
fn h0_power(chart: &ExtChart, stem: i32, s: u32, k: u32) -> F2Matrix {
    let mut m = F2Matrix::identity(chart.dim(stem, s));
    for j in 0..k {
        m = chart.h0_matrix(stem, s + j).mul(&m);
    }
    m
}

/// Possible differentials between occupied bidegrees in `stems`, below the
/// reliable top. With `derivation_rule`, a candidate is excluded when some
/// `h0^k` (or `h1`) kills the source but acts injectively on the target.
pub fn collapse_check(chart: &ExtChart, stems: &[i32], derivation_rule: bool) -> Vec<Candidate> {
    let mut out = Vec::new();
    for &stem in stems {
        let top_src = chart.reliable_top(stem);
        let top_dst = chart.reliable_top(stem - 1);
        for s in 0..=top_src {
            if chart.dim(stem, s) == 0 {
                continue;
            }
            for page in 2.. {
                let ts = s + page;
                if ts >= top_dst {
                    break;
                }
                if chart.dim(stem - 1, ts) == 0 {
                    continue;
                }
                let mut excluded_by = None;
                if derivation_rule {
                    let k_max = (top_src - s).min(top_dst - ts);
                    excluded_by = (1..=k_max)
                        .find(|&k| {
                            h0_power(chart, stem, s, k).is_zero() && injective(&h0_power(chart, stem - 1, ts, k))
                        })
                        .map(|k| if k == 1 { "h0".to_string() } else { format!("h0^{k}") });
                    if excluded_by.is_none()
                        && s < chart.reliable_top(stem + 1)
                        && ts < chart.reliable_top(stem)
                        && chart.h1_matrix(stem, s).is_zero()
                        && injective(&chart.h1_matrix(stem - 1, ts))
                    {
                        excluded_by = Some("h1".to_string());
                    }
                }
                out.push(Candidate {
                    page,
                    source: (stem, s),
                    target: (stem - 1, ts),
                    excluded_by,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyReadout {
    pub groups: BTreeMap<i32, FinAbGroup>,
    /// Free summands stand for the 2-adic integers.
    pub two_complete: bool,
    pub ambiguities: Vec<String>,
}

/// Reads 2-completed homotopy groups off an E-infinity chart: a finite `h0`-chain
/// of length `L` gives `Z/2^L`, a chain reaching the reliable top gives `Z`.
pub fn read_homotopy(chart: &ExtChart, stems: &[i32]) -> Result<HomotopyReadout> {
    let chart = if chart.differentials.is_empty() {
        normalize(chart)?
    } else {
        chart.clone()
    };
    let mut groups = BTreeMap::new();
    let mut ambiguities = BTreeSet::new();
    for &stem in stems {
        let horizon = chart.reliable_top(stem);
        let visible: Vec<Bar> = bars(&chart, stem)?
            .into_iter()
            .filter(|b| b.bottom() < horizon)
            .collect();
        let mut g = FinAbGroup::zero();
        for b in &visible {
            g = if b.top() >= horizon {
                g.sum(&FinAbGroup::free(1))
            } else {
                g.sum(&FinAbGroup::cyclic(1 << (b.top() - b.bottom() + 1)))
            };
        }
        for b in visible.iter().filter(|b| b.top() < horizon) {
            for c in &visible {
                if c.bottom() >= b.top() + 2 {
                    ambiguities.insert(format!(
                        "stem {stem}: possible hidden extension from the chain on s={}..{} to the chain starting at s={}",
                        b.bottom(),
                        b.top(),
                        c.bottom()
                    ));
                }
            }
        }
        groups.insert(stem, g);
    }
    Ok(HomotopyReadout {
        groups,
        two_complete: true,
        ambiguities: ambiguities.into_iter().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MthCase {
    Ko,
    PinPlus,
    PinMinus,
    PincPlus,
    PincMinus,
    GPlus,
    SpinZ2n(u32),
}

impl FromStr for MthCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = parse_call(&s.to_ascii_lowercase())?;
        Ok(match (name.as_str(), &args[..]) {
            ("ko", []) => MthCase::Ko,
            ("pin+", []) => MthCase::PinPlus,
            ("pin-", []) => MthCase::PinMinus,
            ("pinc+", []) => MthCase::PincPlus,
            ("pinc-", []) => MthCase::PincMinus,
            ("g+", []) => MthCase::GPlus,
            ("spinz2n", [n]) if *n >= 2 => MthCase::SpinZ2n(*n as u32),
            _ => return Err(Error::UnknownName(s.to_string())),
        })
    }
}

impl fmt::Display for MthCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MthCase::Ko => write!(f, "ko"),
            MthCase::PinPlus => write!(f, "pin+"),
            MthCase::PinMinus => write!(f, "pin-"),
            MthCase::PincPlus => write!(f, "pinc+"),
            MthCase::PincMinus => write!(f, "pinc-"),
            MthCase::GPlus => write!(f, "g+"),
            MthCase::SpinZ2n(n) => write!(f, "spinz2n({n})"),
        }
    }
}

/// Highest stem in which the A(1)-module model agrees with the Thom spectrum.
pub const MAX_MODEL_STEM: i32 = 7;
pub const PIPELINE_SMAX: u32 = 12;

impl MthCase {
    /// The module whose Ext over A(1) computes the case, with the differentials it forces.
    pub fn module(&self, t: i32) -> Result<(GradedA1Module, Vec<DifferentialSpec>)> {
        let thom = |kind, n, shift| thom_module(kind, n, shift, t);
        Ok(match self {
            MthCase::Ko => (GradedA1Module::zero_actions("F2", 0, vec![1]), vec![]),
            MthCase::PinPlus => (thom(ThomKind::MO, 1, -1)?, vec![]),
            MthCase::PinMinus => (thom(ThomKind::MTO, 1, 1)?, vec![]),
            MthCase::PincMinus => (thom(ThomKind::MO, 2, -2)?, vec![]),
            MthCase::PincPlus => (thom(ThomKind::MTO, 2, 2)?, vec![]),
            MthCase::GPlus => (thom(ThomKind::MO, 3, -3)?, vec![]),
            MthCase::SpinZ2n(n) => {
                let tb = twisted_bz_module(*n, t)?;
                let specs = tb
                    .bockstein
                    .map(|_| DifferentialSpec::Bockstein { n: *n })
                    .into_iter()
                    .collect();
                (tb.module, specs)
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineResult {
    pub case: String,
    pub groups: BTreeMap<i32, FinAbGroup>,
    pub two_complete: bool,
    pub ambiguities: Vec<String>,
    pub candidates: Vec<Candidate>,
    #[serde(skip)]
    pub chart: ExtChart,
}

fn pipeline_once(case: &MthCase, stems: &[i32], smax: u32) -> Result<PipelineResult> {
    // One stem beyond the model range so that the top differentials have sources.
    let tmax = MAX_MODEL_STEM + 1 + smax as i32 + 2;
    let (module, specs) = case.module(tmax)?;
    let res = minimal_resolution(&module, smax, tmax)?;
    let chart = run_differentials(&normalize(&ext_chart(&res))?, &specs)?;
    let all: Vec<i32> = (0..=MAX_MODEL_STEM).collect();
    let candidates = collapse_check(&chart, &all, true);
    let readout = read_homotopy(&chart, stems)?;
    let mut ambiguities = readout.ambiguities;
    let mut open: BTreeMap<i32, (usize, u32, u32)> = BTreeMap::new();
    for c in candidates.iter().filter(|c| c.excluded_by.is_none()) {
        if stems.contains(&c.source.0) || stems.contains(&c.target.0) {
            let e = open.entry(c.source.0).or_insert((0, c.page, c.page));
            *e = (e.0 + 1, e.1.min(c.page), e.2.max(c.page));
        }
    }
    for (stem, (count, lo, hi)) in open {
        ambiguities.push(format!(
            "stem {stem} -> stem {}: {count} differential candidates on pages {lo}..{hi} not excluded",
            stem - 1
        ));
    }
    Ok(PipelineResult {
        case: case.to_string(),
        groups: readout.groups,
        two_complete: readout.two_complete,
        ambiguities,
        candidates,
        chart,
    })
}

/// Resolve, apply forced differentials, check for collapse and read off homotopy
/// in `stems`. Every tower is confirmed by a second run two filtrations higher.
pub fn mth_pipeline(case: &MthCase, stems: &[i32]) -> Result<PipelineResult> {
    if let Some(&bad) = stems.iter().find(|&&s| !(0..=MAX_MODEL_STEM).contains(&s)) {
        return Err(Error::range(
            case.to_string(),
            bad,
            "out of range: the A(1)-module model only describes the Thom spectrum through stem 7, \
             since MSpin and ko differ from degree 8 on",
        ));
    }
    let first = pipeline_once(case, stems, PIPELINE_SMAX)?;
    let second = pipeline_once(case, stems, PIPELINE_SMAX + 2)?;
    if first.groups != second.groups {
        let diff: Vec<String> = first
            .groups
            .iter()
            .filter(|(k, v)| second.groups.get(k) != Some(v))
            .map(|(k, v)| format!("stem {k}: {v} vs {}", second.groups[k]))
            .collect();
        return Err(Error::Unstable(format!(
            "{case}: readout changed with smax: {}",
            diff.join("; ")
        )));
    }
    Ok(first)
}

/// Layout constants shared by the renderers.
pub struct Layout {
    pub ascii_col: usize,
    pub svg_cell: f64,
    pub svg_margin: f64,
    pub svg_dot_radius: f64,
    pub svg_dot_spacing: f64,
    pub svg_stroke: f64,
}

pub const LAYOUT: Layout = Layout {
    ascii_col: 4,
    svg_cell: 40.0,
    svg_margin: 30.0,
    svg_dot_radius: 4.0,
    svg_dot_spacing: 9.0,
    svg_stroke: 1.5,
};

fn extent(chart: &ExtChart) -> (i32, u32) {
    let max_stem = chart.stems().into_iter().max().unwrap_or(0).max(0);
    let max_s = chart.dots.iter().map(|d| d.0).max().unwrap_or(0);
    (max_stem, max_s)
}

pub fn render_ascii(chart: &ExtChart) -> String {
    let w = LAYOUT.ascii_col;
    let (max_stem, max_s) = extent(chart);
    let stems = 0..=max_stem;
    let mut out = String::new();
    for s in (0..=max_s).rev() {
        if s < max_s {
            let mut line = format!("{:>4}", "");
            for stem in stems.clone() {
                let mut cell = vec![' '; w];
                if !chart.h0_matrix(stem, s).is_zero() {
                    cell[0] = '|';
                }
                if !chart.h1_matrix(stem, s).is_zero() {
                    cell[w / 2] = '/';
                }
                line.extend(cell);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let mut line = format!("{s:>3} ");
        for stem in stems.clone() {
            let cell = match chart.dim(stem, s) {
                0 => String::new(),
                1 => "o".to_string(),
                k => k.to_string(),
            };
            line.push_str(&format!("{cell:<w$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&format!("{:>4}{}\n", "", "-".repeat(w * (max_stem as usize + 1))));
    let mut labels = format!("{:>4}", "");
    for stem in stems {
        labels.push_str(&format!("{stem:<w$}"));
    }
    out.push_str(labels.trim_end());
    out.push('\n');
    out
}

pub fn render_svg(chart: &ExtChart) -> String {
    let l = &LAYOUT;
    let (max_stem, max_s) = extent(chart);
    let width = 2.0 * l.svg_margin + (max_stem + 1) as f64 * l.svg_cell;
    let height = 2.0 * l.svg_margin + (max_s + 1) as f64 * l.svg_cell;
    let origin = (l.svg_margin, height - l.svg_margin);
    let pos = |d: &DotId| -> (f64, f64) {
        let (s, t, i) = *d;
        let stem = t - s as i32;
        let k = chart.dim(stem, s);
        let rank = chart.dots_at(stem, s).iter().position(|x| x.2 == i).unwrap_or(0);
        let offset = (rank as f64 - (k as f64 - 1.0) / 2.0) * l.svg_dot_spacing;
        (
            origin.0 + (stem as f64 + 0.5) * l.svg_cell + offset,
            origin.1 - (s as f64 + 0.5) * l.svg_cell,
        )
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(
        out,
        r#"<g stroke="black" stroke-width="{:.1}"><line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/><line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/></g>"#,
        l.svg_stroke,
        origin.0,
        origin.1,
        width - l.svg_margin,
        origin.1,
        origin.0,
        origin.1,
        origin.0,
        l.svg_margin
    );
    let _ = writeln!(
        out,
        r#"<g font-family="monospace" font-size="10" text-anchor="middle">"#
    );
    for stem in 0..=max_stem {
        let x = origin.0 + (stem as f64 + 0.5) * l.svg_cell;
        let _ = writeln!(out, r#"<text x="{x:.1}" y="{:.1}">{stem}</text>"#, origin.1 + 14.0);
    }
    for s in 0..=max_s {
        let y = origin.1 - (s as f64 + 0.5) * l.svg_cell + 3.0;
        let _ = writeln!(out, r#"<text x="{:.1}" y="{y:.1}">{s}</text>"#, origin.0 - 12.0);
    }
    out.push_str("</g>\n");
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="{:.1}">"#, l.svg_stroke);
    for (a, b) in chart.h0.iter().chain(&chart.h1) {
        if !chart.dots.contains(a) || !chart.dots.contains(b) {
            continue;
        }
        let (p, q) = (pos(a), pos(b));
        let _ = writeln!(
            out,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"#,
            p.0, p.1, q.0, q.1
        );
    }
    out.push_str("</g>\n<g fill=\"black\">\n");
    for d in &chart.dots {
        let (x, y) = pos(d);
        let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="{:.1}"/>"#, l.svg_dot_radius);
    }
    out.push_str("</g>\n</svg>\n");
    out
}
