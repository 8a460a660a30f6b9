//! Cohomology of classifying spaces and the Atiyah-Hirzebruch spectral sequence
//! for `ko<0..4>`-cohomology.

use serde::Serialize;

use crate::classify::FinAbGroup;
use crate::error::{Error, Result};
use crate::f2core::F2Matrix;
use crate::modcat::{self, parse_call, tensor_product, GradedA1Module};
use crate::thomspaces::virtual_bundle_sw;

/// How the integral Bockstein `H^d(X; Z/2) -> H^{d+1}(X; Z)` is determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BocksteinKind {
    /// All torsion in `H^*(X; Z)` has order 2, so `rho . beta = Sq1` pins it down.
    OrderTwo,
    /// `BC_{2^n}` with `n >= 2`: nonzero exactly on odd degrees.
    Cyclic(u32),
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SpaceCohomology {
    pub name: String,
    /// Degrees through which both cohomologies are known.
    pub top: i32,
    pub mod2: GradedA1Module,
    /// `H^d(X; Z)` for `d = 0..=top`.
    pub integral: Vec<FinAbGroup>,
    pub bockstein: BocksteinKind,
    /// `Some(k)` for `(RP^inf)^k`.
    pub rp_power: Option<usize>,
}

/// The Bockstein as a matrix onto a basis of the socle of `H^{d+1}(X; Z)`, if known.
#[derive(Clone, Debug)]
pub enum Beta {
    Known(F2Matrix),
    Unknown { socle: usize },
}

impl SpaceCohomology {
    pub fn h2(&self, d: i32) -> usize {
        if d <= 0 || d > self.top {
            0
        } else {
            self.mod2.dim(d)
        }
    }

    /// Reduced integral cohomology.
    pub fn hz(&self, d: i32) -> FinAbGroup {
        if d <= 0 || d > self.top {
            FinAbGroup::zero()
        } else {
            self.integral[d as usize].clone()
        }
    }

    /// `Sq^i` on reduced mod 2 cohomology.
    pub fn sq(&self, i: u32, d: i32) -> F2Matrix {
        let (rows, cols) = (self.h2(d + i as i32), self.h2(d));
        if rows == 0 || cols == 0 {
            return F2Matrix::zeros(rows, cols);
        }
        self.mod2.sq(i, d)
    }

    pub fn beta(&self, d: i32) -> Result<Beta> {
        let src = self.h2(d);
        let socle = self.hz(d + 1).socle_rank();
        if socle == 0 || src == 0 {
            return Ok(Beta::Known(F2Matrix::zeros(socle, src)));
        }
        match self.bockstein {
            BocksteinKind::OrderTwo => {
                let sq1 = self.sq(1, d);
                let pivots = sq1.rref().pivots;
                if pivots.len() != socle {
                    return Err(Error::Consistency(format!(
                        "{}: degree {}: socle rank {socle} differs from rank Sq1 = {}",
                        self.name,
                        d + 1,
                        pivots.len()
                    )));
                }
                let basis: Vec<_> = pivots.iter().map(|&c| sq1.column(c)).collect();
                let change = F2Matrix::from_columns(sq1.rows(), &basis);
                let cols: Vec<_> = (0..src)
                    .map(|j| {
                        change
                            .solve(&sq1.column(j))
                            .map(|x| x.expect("column lies in the image"))
                    })
                    .collect::<Result<_>>()?;
                Ok(Beta::Known(F2Matrix::from_columns(socle, &cols)))
            }
            BocksteinKind::Cyclic(_) => {
                let mut m = F2Matrix::zeros(socle, src);
                if d % 2 == 1 {
                    m.set(0, 0, true);
                }
                Ok(Beta::Known(m))
            }
            BocksteinKind::Unknown => Ok(Beta::Unknown { socle }),
        }
    }

    /// Basis (as columns) of the image of reduction mod 2 of the torsion of `H^d(X; Z)`.
    fn rho_torsion(&self, d: i32) -> Result<Option<F2Matrix>> {
        let dim = self.h2(d);
        if self.hz(d).torsion.is_empty() {
            return Ok(Some(F2Matrix::zeros(dim, 0)));
        }
        match self.bockstein {
            // Torsion is the image of the Bockstein, so its reduction is the image of Sq1.
            BocksteinKind::OrderTwo => {
                let sq1 = self.sq(1, d - 1);
                let cols: Vec<_> = sq1.rref().pivots.iter().map(|&c| sq1.column(c)).collect();
                Ok(Some(F2Matrix::from_columns(dim, &cols)))
            }
            _ if self.hz(d).rank == 0 => self.rho_image(d),
            _ => Ok(None),
        }
    }

    /// Basis (as columns) of the image of reduction mod 2, i.e. the kernel of the Bockstein.
    fn rho_image(&self, d: i32) -> Result<Option<F2Matrix>> {
        let dim = self.h2(d);
        match self.beta(d)? {
            Beta::Known(b) => Ok(Some(F2Matrix::from_columns(dim, &b.kernel_basis()))),
            Beta::Unknown { .. } => Ok(None),
        }
    }
}

fn rp_integral(d: i32, n: Option<i32>) -> FinAbGroup {
    match (d, n) {
        (0, _) => FinAbGroup::free(1),
        (d, Some(n)) if d > n => FinAbGroup::zero(),
        (d, Some(n)) if d == n && d % 2 == 1 => FinAbGroup::free(1),
        (d, _) if d % 2 == 0 => FinAbGroup::cyclic(2),
        _ => FinAbGroup::zero(),
    }
}

/// `RPinf`, `RP(n)`, `CPinf`, `BC2n(n)`, known through degree `t`.
pub fn space_builtin(spec: &str, t: i32) -> Result<SpaceCohomology> {
    let (name, args) = parse_call(spec)?;
    let t = t.max(0);
    let degrees = 0..=t;
    let (mod2, integral, bockstein, rp_power) = match (name.as_str(), &args[..]) {
        ("RPinf", []) => (
            modcat::projective("RPinf", 0, t),
            degrees.map(|d| rp_integral(d, None)).collect(),
            BocksteinKind::OrderTwo,
            Some(1),
        ),
        ("RP", [n]) if *n >= 1 => {
            let n = *n as i32;
            let mut m = modcat::projective(&format!("RP({n})"), 0, n.min(t));
            let dims = (0..=t).map(|d| (d <= n) as usize).collect::<Vec<_>>();
            if t > n {
                let mut big = GradedA1Module::zero_actions(&m.name, 0, dims);
                for d in 0..=n {
                    for i in [1u32, 2] {
                        if d + i as i32 <= n && m.sq(i, d).get(0, 0) {
                            big.set_sq(i, d, 0, 0, true);
                        }
                    }
                }
                let labels = (0..=t)
                    .map(|d| if d <= n { vec![format!("x^{d}")] } else { vec![] })
                    .collect();
                m = big.with_labels(labels);
            }
            (
                m,
                degrees.map(|d| rp_integral(d, Some(n))).collect(),
                BocksteinKind::OrderTwo,
                None,
            )
        }
        ("CPinf", []) => {
            let dims = (0..=t).map(|d| (d % 2 == 0) as usize).collect();
            let mut m = GradedA1Module::zero_actions("CPinf", 0, dims);
            for d in (2..=t - 2).step_by(2) {
                if (d / 2) % 2 == 1 {
                    m.set_sq(2, d, 0, 0, true);
                }
            }
            let labels = (0..=t)
                .map(|d| {
                    if d % 2 == 0 {
                        vec![format!("y^{}", d / 2)]
                    } else {
                        vec![]
                    }
                })
                .collect();
            let integral = degrees.map(|d| FinAbGroup::free((d % 2 == 0) as u32)).collect();
            (m.with_labels(labels), integral, BocksteinKind::OrderTwo, None)
        }
        ("BC2n", [n]) if *n >= 1 => {
            let n = *n as u32;
            let integral = degrees
                .map(|d| match d {
                    0 => FinAbGroup::free(1),
                    d if d % 2 == 0 => FinAbGroup::cyclic(1 << n),
                    _ => FinAbGroup::zero(),
                })
                .collect();
            let kind = if n == 1 {
                BocksteinKind::OrderTwo
            } else {
                BocksteinKind::Cyclic(n)
            };
            (modcat::bc2n(n, t), integral, kind, (n == 1).then_some(1))
        }
        _ => return Err(Error::UnknownName(spec.to_string())),
    };
    let mut mod2: GradedA1Module = mod2;
    mod2.truncation = Some(t);
    Ok(SpaceCohomology {
        name: spec.to_string(),
        top: t,
        mod2,
        integral,
        bockstein,
        rp_power,
    })
}

/// Cohomology of `X x Y`, known one degree lower than the factors.
pub fn kunneth(x: &SpaceCohomology, y: &SpaceCohomology) -> SpaceCohomology {
    let top = x.top.min(y.top) - 1;
    let integral = (0..=top)
        .map(|n| {
            let mut g = FinAbGroup::zero();
            for i in 0..=n {
                g = g.sum(&x.integral[i as usize].tensor(&y.integral[(n - i) as usize]));
            }
            for i in 0..=n + 1 {
                g = g.sum(&x.integral[i as usize].tor(&y.integral[(n + 1 - i) as usize]));
            }
            g
        })
        .collect();
    let mod2 = tensor_product(&x.mod2.restrict(top), &y.mod2.restrict(top), top);
    let bockstein = match (x.bockstein, y.bockstein) {
        (BocksteinKind::OrderTwo, BocksteinKind::OrderTwo) => BocksteinKind::OrderTwo,
        _ => BocksteinKind::Unknown,
    };
    let rp_power = match (x.rp_power, y.rp_power) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    SpaceCohomology {
        name: format!("{}*{}", x.name, y.name),
        top,
        mod2,
        integral,
        bockstein,
        rp_power,
    }
}

/// Parses products such as `RPinf^2` or `RPinf*BC2n(2)` and computes through degree `t`.
pub fn space_expression(expr: &str, t: i32) -> Result<SpaceCohomology> {
    let mut factors = Vec::new();
    for part in expr.split('*').map(str::trim) {
        if part.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{expr}`")));
        }
        let (base, power) = match part.rsplit_once('^') {
            Some((b, p)) => (
                b.trim(),
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{part}`")))?,
            ),
            None => (part, 1),
        };
        if power == 0 {
            return Err(Error::Parse(format!("zero exponent in `{part}`")));
        }
        factors.extend(std::iter::repeat_n(base, power));
    }
    let extra = factors.len() as i32 - 1;
    let mut it = factors.iter();
    let first = it.next().ok_or_else(|| Error::Parse("empty space expression".into()))?;
    let mut x = space_builtin(first, t + extra)?;
    for f in it {
        x = kunneth(&x, &space_builtin(f, t + extra)?);
    }
    x.name = expr.replace(' ', "");
    Ok(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub lo: u32,
    pub hi: u32,
}

impl Bounds {
    fn exact(x: u32) -> Self {
        Bounds { lo: x, hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// One E-infinity entry on the diagonal.
#[derive(Clone, Debug, Serialize)]
pub struct AhssEntry {
    pub p: i32,
    pub q: i32,
    pub e2: FinAbGroup,
    /// `log2` of the order of the torsion surviving to E-infinity.
    pub torsion_log2: Bounds,
    pub rank: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct AhssResult {
    pub space: String,
    pub n: i32,
    /// Entries in increasing filtration `p`.
    pub entries: Vec<AhssEntry>,
    pub rank: u32,
    pub torsion_bounds: (u32, u32),
    pub candidates: Vec<String>,
    pub certificates: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub rp_power: Option<usize>,
}

impl AhssResult {
    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| e.torsion_log2.is_exact())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AhssOptions {
    /// When false every differential is taken to vanish.
    pub differentials: bool,
}

impl Default for AhssOptions {
    fn default() -> Self {
        AhssOptions { differentials: true }
    }
}

/// Rank of `op` restricted to the column span of `sub`, or bounds when `sub` is
/// only known to have dimension `dim_sub`.
fn restricted_rank(op: &F2Matrix, sub: Option<&F2Matrix>, dim_sub: usize) -> Bounds {
    match sub {
        Some(s) if s.cols() == 0 || op.rows() == 0 => Bounds::exact(0),
        Some(s) => Bounds::exact(op.mul(s).rank() as u32),
        None => {
            let r = op.rank();
            let nullity = op.cols() - r;
            Bounds {
                lo: dim_sub.saturating_sub(nullity) as u32,
                hi: dim_sub.min(r) as u32,
            }
        }
    }
}

/// Rank of `beta . Sq2` out of degree `d`.
fn d3_rank(x: &SpaceCohomology, d: i32) -> Result<Bounds> {
    let sq2 = x.sq(2, d);
    Ok(match x.beta(d + 2)? {
        Beta::Known(b) if b.rows() == 0 || sq2.cols() == 0 => Bounds::exact(0),
        Beta::Known(b) => Bounds::exact(b.mul(&sq2).rank() as u32),
        Beta::Unknown { socle } => Bounds {
            lo: 0,
            hi: sq2.rank().min(socle) as u32,
        },
    })
}

fn entry(p: i32, q: i32, e2: FinAbGroup, lo: i64, hi: i64, rank: u32) -> AhssEntry {
    AhssEntry {
        p,
        q,
        e2,
        torsion_log2: Bounds {
            lo: lo.max(0) as u32,
            hi: hi.max(0) as u32,
        },
        rank,
    }
}

/// `ko<0..4>^{n-4}` of `X` (reduced), i.e. the bordism invariants `[MSpin ^ X, S^n I_Z]`.
pub fn ko4_ahss(x: &SpaceCohomology, n: i32) -> Result<AhssResult> {
    ko4_ahss_with(x, n, AhssOptions::default())
}

pub fn ko4_ahss_with(x: &SpaceCohomology, n: i32, opts: AhssOptions) -> Result<AhssResult> {
    let m = n - 4;
    if m + 6 > x.top {
        return Err(Error::range(
            &x.name,
            m + 6,
            format!("cohomology is known only through degree {}", x.top),
        ));
    }
    let elementary = |d: i32| FinAbGroup::elementary(x.h2(d));
    let on = opts.differentials;
    let mut entries = Vec::new();

    // (m, 0): kernel of Sq2 . rho on H^m(Z).
    let h = x.hz(m);
    let sq2_m = x.sq(2, m);
    let r0 = if on {
        let t = x.rho_torsion(m)?;
        restricted_rank(&sq2_m, t.as_ref(), h.socle_rank())
    } else {
        Bounds::exact(0)
    };
    let len = h.length() as i64;
    entries.push(entry(m, 0, h.clone(), len - r0.hi as i64, len - r0.lo as i64, h.rank));

    // (m+1, -1): ker Sq2 / Sq2(im rho).
    let k1 = if on {
        x.h2(m + 1) - x.sq(2, m + 1).rank()
    } else {
        x.h2(m + 1)
    } as i64;
    let i1 = if on {
        let im = x.rho_image(m - 1)?;
        restricted_rank(&x.sq(2, m - 1), im.as_ref(), x.hz(m - 1).mod2_rank())
    } else {
        Bounds::exact(0)
    };
    entries.push(entry(
        m + 1,
        -1,
        elementary(m + 1),
        k1 - i1.hi as i64,
        k1 - i1.lo as i64,
        0,
    ));

    // (m+2, -2): kernel of d3 = beta Sq2 on H^{m+2} / Sq2 H^m.
    let e3 = if on {
        x.h2(m + 2) - x.sq(2, m).rank()
    } else {
        x.h2(m + 2)
    } as i64;
    let d3_out = if on { d3_rank(x, m + 2)? } else { Bounds::exact(0) };
    entries.push(entry(
        m + 2,
        -2,
        elementary(m + 2),
        e3 - d3_out.hi as i64,
        e3 - d3_out.lo as i64,
        0,
    ));

    // (m+4, -4): H^{m+4}(Z) modulo the image of d3 from (m+1, -2).
    let h4 = x.hz(m + 4);
    let d3_in = if on { d3_rank(x, m + 1)? } else { Bounds::exact(0) };
    let len4 = h4.length() as i64;
    entries.push(entry(
        m + 4,
        -4,
        h4.clone(),
        len4 - d3_in.hi as i64,
        len4 - d3_in.lo as i64,
        h4.rank,
    ));

    let mut candidates = Vec::new();
    if on {
        let nonzero_z = |d: i32| !x.hz(d).is_zero();
        if nonzero_z(m) && x.h2(m + 3) > 0 {
            candidates.push(format!("d3 from ({m},0) to ({},-2)", m + 3));
        }
        // Degree-1 classes of (RP^inf)^k come from single factors, where H^5(Z) = 0.
        let pulled_back = x.rp_power.is_some() && m + 1 == 1;
        if x.h2(m + 1) > 0 && nonzero_z(m + 5) && !pulled_back {
            candidates.push(format!("d4 from ({},-1) to ({},-4)", m + 1, m + 5));
        }
        if nonzero_z(m) && nonzero_z(m + 5) {
            candidates.push(format!("d5 from ({m},0) to ({},-4)", m + 5));
        }
        if nonzero_z(m - 1) && nonzero_z(m + 4) {
            candidates.push(format!("d5 from ({},0) to ({},-4)", m - 1, m + 4));
        }
    }

    let lo: u32 = entries.iter().map(|e| e.torsion_log2.lo).sum();
    let hi: u32 = entries.iter().map(|e| e.torsion_log2.hi).sum();
    let rank = entries.iter().map(|e| e.rank).sum();
    let mut certificates = Vec::new();
    let mut notes = Vec::new();
    if on {
        for e in &entries {
            if e.torsion_log2.lo > 0 {
                certificates.push(format!(
                    "E-infinity at ({},{}) has order at least 2^{}",
                    e.p, e.q, e.torsion_log2.lo
                ));
            }
        }
        // Next diagonal: d3 into (m+5, -4) cannot exhaust H^{m+5}(Z) when the source is too small.
        let src = (x.h2(m + 2) - x.sq(2, m).rank()) as u32;
        let target = x.hz(m + 5).length();
        if target > src {
            certificates.push(format!(
                "d3 from ({},-2) has source of order 2^{src} but H^{}(Z) has order 2^{target}, so E-infinity at ({},-4) is nonzero",
                m + 2,
                m + 5,
                m + 5
            ));
        }
        if x.bockstein == BocksteinKind::Unknown {
            notes.push(format!(
                "{}: integral Bockstein not determined; ranks of d3 are bounded",
                x.name
            ));
        }
    } else {
        notes.push("differentials disabled".to_string());
    }
    Ok(AhssResult {
        space: x.name.clone(),
        n,
        entries,
        rank,
        torsion_bounds: (lo, hi),
        candidates,
        certificates,
        notes,
        rp_power: x.rp_power,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionPolicy {
    /// Join adjacent filtration layers into the longest possible cyclic groups.
    MaximalTorsion,
    /// Orders of the classes `lambda_S` over `(RP^4)^k` from Stiefel-Whitney classes.
    SwOracle(usize),
}

impl std::str::FromStr for ExtensionPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = parse_call(s)?;
        match (name.as_str(), &args[..]) {
            ("maximal_torsion", []) => Ok(ExtensionPolicy::MaximalTorsion),
            ("sw_oracle", []) => Ok(ExtensionPolicy::SwOracle(0)),
            ("sw_oracle", [k]) if *k >= 1 => Ok(ExtensionPolicy::SwOracle(*k as usize)),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Greedy: repeatedly peel off a cyclic group spanning the longest run of
/// consecutive nonzero layers.
pub fn maximal_torsion(layers: &[u32]) -> FinAbGroup {
    let mut c = layers.to_vec();
    let mut orders = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None;
        let mut i = 0;
        while i < c.len() {
            if c[i] == 0 {
                i += 1;
                continue;
            }
            let j = (i..c.len()).take_while(|&j| c[j] > 0).last().unwrap();
            if best.is_none_or(|(a, b)| j - i > b - a) {
                best = Some((i, j));
            }
            i = j + 1;
        }
        let Some((a, b)) = best else { break };
        for x in &mut c[a..=b] {
            *x -= 1;
        }
        orders.push(1u64 << (b - a + 1));
    }
    FinAbGroup::new(0, orders)
}

/// Order of `lambda_S` in `KO((RP^4)^k)` read off its total Stiefel-Whitney class.
pub fn sw_order(k: usize, subset: &[usize]) -> Result<u64> {
    if virtual_bundle_sw(k, subset, 1, 4)?.is_one_through(4) {
        return Ok(1);
    }
    let mut e = 0;
    while e < 8 && !virtual_bundle_sw(k, subset, 1 << (e + 1), 4)?.is_one_through(4) {
        e += 1;
    }
    Ok(2 << e)
}

pub fn resolve_extensions(r: &AhssResult, policy: ExtensionPolicy) -> Result<FinAbGroup> {
    if !r.is_exact() {
        return Err(Error::Budget(format!(
            "{}: E-infinity known only up to bounds 2^{}..2^{}",
            r.space, r.torsion_bounds.0, r.torsion_bounds.1
        )));
    }
    let layers: Vec<u32> = r.entries.iter().map(|e| e.torsion_log2.lo).collect();
    let total: u32 = layers.iter().sum();
    let g = match policy {
        ExtensionPolicy::MaximalTorsion => maximal_torsion(&layers),
        ExtensionPolicy::SwOracle(k) => {
            let k = if k == 0 { r.rp_power.unwrap_or(0) } else { k };
            if r.rp_power != Some(k) || r.n != 4 {
                return Err(Error::Parameter(format!(
                    "sw_oracle({k}) applies to RPinf^{k} with n = 4, not {} with n = {}",
                    r.space, r.n
                )));
            }
            if k >= 4 {
                return Err(Error::Budget(format!(
                    "sw_oracle({k}): subsets of size 4 and more are not covered; bounds only"
                )));
            }
            let mut orders = Vec::new();
            for mask in 1u32..(1 << k) {
                let s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
                let o = sw_order(k, &s)?;
                if o > 1 {
                    orders.push(o);
                }
            }
            FinAbGroup::new(0, orders)
        }
    };
    if g.length() != total {
        return Err(Error::Consistency(format!(
            "{}: extension has length {} but E-infinity has length {total}",
            r.space,
            g.length()
        )));
    }
    Ok(g.sum(&FinAbGroup::free(r.rank)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn integral_cohomology_by_kunneth() {
        let x = space_expression("RPinf*BC2n(2)", 8).unwrap();
        assert_eq!(x.hz(6), g("Z/4 + (Z/2)^3"));
        let y = space_expression("RPinf^2", 8).unwrap();
        assert_eq!(y.hz(2), g("(Z/2)^2"));
        assert_eq!(y.hz(3), g("Z/2"));
        assert_eq!(y.h2(4), 5);
    }

    #[test]
    fn rp_layers() {
        for (k, layers, group) in [
            (1, [0, 1, 1, 1], "Z/8"),
            (2, [0, 2, 3, 3], "(Z/8)^2 + Z/4"),
            (3, [0, 3, 6, 7], "(Z/8)^3 + (Z/4)^3 + Z/2"),
        ] {
            let r = ko4_ahss(&space_expression(&format!("RPinf^{k}"), 10).unwrap(), 4).unwrap();
            let got: Vec<u32> = r.entries.iter().map(|e| e.torsion_log2.lo).collect();
            assert_eq!(got, layers, "k = {k}");
            assert!(r.candidates.is_empty(), "{:?}", r.candidates);
            assert_eq!(
                resolve_extensions(&r, ExtensionPolicy::MaximalTorsion).unwrap(),
                g(group)
            );
            assert_eq!(resolve_extensions(&r, ExtensionPolicy::SwOracle(k)).unwrap(), g(group));
        }
    }

    #[test]
    fn rp_power_four_is_bounds_only() {
        let r = ko4_ahss(&space_expression("RPinf^4", 10).unwrap(), 4).unwrap();
        let got: Vec<u32> = r.entries.iter().map(|e| e.torsion_log2.lo).collect();
        assert_eq!(got, [0, 4, 10, 14]);
        assert!(matches!(
            resolve_extensions(&r, ExtensionPolicy::SwOracle(4)),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn c2_in_dimension_four_vanishes() {
        let r = ko4_ahss(&space_builtin("RPinf", 12).unwrap(), 5).unwrap();
        assert_eq!(r.torsion_bounds, (0, 0));
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn c2xc4_is_nontrivial() {
        let r = ko4_ahss(&space_expression("RPinf*BC2n(2)", 12).unwrap(), 5).unwrap();
        assert!(r.torsion_bounds.0 >= 1);
        assert_eq!(r.entries[1].torsion_log2, Bounds::exact(1));
        assert!(
            r.certificates.iter().any(|c| c.contains("2^4") && c.contains("2^5")),
            "{:?}",
            r.certificates
        );
    }

    #[test]
    fn greedy_extensions() {
        assert_eq!(maximal_torsion(&[2, 3, 3]), g("(Z/8)^2 + Z/4"));
        assert_eq!(maximal_torsion(&[1, 0, 1]), g("(Z/2)^2"));
        assert_eq!(maximal_torsion(&[]), g("0"));
    }

    #[test]
    fn sanity_mode_is_naive_sum() {
        let x = space_expression("RPinf^2", 10).unwrap();
        let r = ko4_ahss_with(&x, 4, AhssOptions { differentials: false }).unwrap();
        let naive = x.hz(0).length() + (x.h2(1) + x.h2(2)) as u32 + x.hz(4).length();
        assert_eq!(r.torsion_bounds, (naive, naive));
    }
}
