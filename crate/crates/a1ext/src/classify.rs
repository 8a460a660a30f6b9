//! 2-local abelian groups, Anderson duality, and the bosonic and fermionic
//! classification tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::adamschart::{mth_pipeline, MthCase};
use crate::ahss::{self, ExtensionPolicy};
use crate::error::{Error, Result};

/// `Z^rank` plus cyclic 2-groups of the listed orders (descending).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    pub rank: u32,
    pub torsion: Vec<u64>,
}

impl FinAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: u32) -> Self {
        FinAbGroup { rank, torsion: vec![] }
    }

    /// Panics unless every order is a power of two at least 2.
    pub fn new(rank: u32, torsion: Vec<u64>) -> Self {
        assert!(
            torsion.iter().all(|&o| o >= 2 && o.is_power_of_two()),
            "torsion orders must be powers of 2: {torsion:?}"
        );
        let mut torsion = torsion;
        torsion.sort_unstable_by(|a, b| b.cmp(a));
        FinAbGroup { rank, torsion }
    }

    pub fn cyclic(order: u64) -> Self {
        if order == 1 {
            Self::zero()
        } else {
            Self::new(0, vec![order])
        }
    }

    pub fn elementary(count: usize) -> Self {
        Self::new(0, vec![2; count])
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut t = self.torsion.clone();
        t.extend(&other.torsion);
        Self::new(self.rank + other.rank, t)
    }

    pub fn torsion_part(&self) -> Self {
        Self::new(0, self.torsion.clone())
    }

    /// Sum of `log2` of the torsion orders.
    pub fn length(&self) -> u32 {
        self.torsion.iter().map(|o| o.trailing_zeros()).sum()
    }

    /// Number of cyclic torsion summands, i.e. rank of the 2-torsion subgroup.
    pub fn socle_rank(&self) -> usize {
        self.torsion.len()
    }

    /// Dimension of `G / 2G`.
    pub fn mod2_rank(&self) -> usize {
        self.rank as usize + self.torsion.len()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut t = Vec::new();
        for &a in &self.torsion {
            for _ in 0..other.rank {
                t.push(a);
            }
            for &b in &other.torsion {
                t.push(a.min(b));
            }
        }
        for &b in &other.torsion {
            for _ in 0..self.rank {
                t.push(b);
            }
        }
        Self::new(self.rank * other.rank, t)
    }

    pub fn tor(&self, other: &Self) -> Self {
        let mut t = Vec::new();
        for &a in &self.torsion {
            for &b in &other.torsion {
                t.push(a.min(b));
            }
        }
        Self::new(0, t)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let o = self.torsion[i];
            let n = self.torsion[i..].iter().take_while(|&&x| x == o).count();
            parts.push(if n == 1 {
                format!("Z/{o}")
            } else {
                format!("(Z/{o})^{n}")
            });
            i += n;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for FinAbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse group `{s}`"));
        let mut g = FinAbGroup::zero();
        let cleaned = s.replace('⊕', "+").replace(' ', "");
        for part in cleaned.split('+').filter(|p| !p.is_empty()) {
            let (base, count) = match part.rsplit_once(")^") {
                Some((b, n)) => (b.trim_start_matches('('), n.parse::<u32>().map_err(|_| bad())?),
                None => match part.strip_prefix("Z^") {
                    Some(n) => ("Z", n.parse::<u32>().map_err(|_| bad())?),
                    None => (part, 1),
                },
            };
            if base == "0" {
                continue;
            }
            if base == "Z" {
                g.rank += count;
                continue;
            }
            let order: u64 = base.strip_prefix("Z/").ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if order < 2 || !order.is_power_of_two() {
                return Err(Error::Parse(format!("`{s}`: only 2-primary torsion is supported")));
            }
            for _ in 0..count {
                g.torsion.push(order);
            }
        }
        Ok(FinAbGroup::new(g.rank, g.torsion))
    }
}

/// The split Anderson sequence: `Ext(pi_low, Z) + Hom(pi_high, Z)`.
pub fn anderson_dual_group(pi_low: &FinAbGroup, pi_high: &FinAbGroup) -> FinAbGroup {
    FinAbGroup::new(pi_high.rank, pi_low.torsion.clone())
}

/// Generator degrees of the unoriented bordism ring: `n >= 2` with `n + 1` not a power of 2.
pub fn unoriented_generator(n: usize) -> bool {
    n >= 2 && !(n + 1).is_power_of_two()
}

/// Dimension of the degree-`d` part of the unoriented bordism ring for `d = 0..=max_d`.
pub fn unoriented_dims(max_d: usize) -> Vec<usize> {
    let mut dp = vec![0usize; max_d + 1];
    dp[0] = 1;
    for n in (2..=max_d).filter(|&n| unoriented_generator(n)) {
        for d in n..=max_d {
            dp[d] += dp[d - n];
        }
    }
    dp
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Computed,
    /// Wall's computation of oriented bordism.
    ConstantWall,
    /// Thom's computation of unoriented bordism.
    ConstantThom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumHomotopyTable {
    pub groups: Vec<FinAbGroup>,
    pub provenance: Provenance,
}

/// `pi_0..pi_6 MSO`.
pub fn wall_mso() -> SpectrumHomotopyTable {
    let g = |s: &str| s.parse::<FinAbGroup>().unwrap();
    SpectrumHomotopyTable {
        groups: ["Z", "0", "0", "0", "Z", "Z/2", "0"].iter().map(|s| g(s)).collect(),
        provenance: Provenance::ConstantWall,
    }
}

/// `pi_0..pi_max MO` as F2-dimensions.
pub fn thom_mo(max: usize) -> SpectrumHomotopyTable {
    SpectrumHomotopyTable {
        groups: unoriented_dims(max).into_iter().map(FinAbGroup::elementary).collect(),
        provenance: Provenance::ConstantThom,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BosonicSymmetry {
    /// Time reversal only: `MO`.
    NoneT,
    /// Time reversal and U(1): `MO ^ CP^inf_+`.
    TU1,
    /// U(1) without time reversal: `MSO ^ CP^inf_+`.
    U1,
}

impl FromStr for BosonicSymmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim_start_matches("bosonic:") {
            "none_T" | "none" => Ok(BosonicSymmetry::NoneT),
            "T_U1" => Ok(BosonicSymmetry::TU1),
            "U1" => Ok(BosonicSymmetry::U1),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

fn cp_inf_mod2_dim(p: i64) -> usize {
    (p >= 0 && p % 2 == 0) as usize
}

/// Classification of bosonic phases in `d` spatial dimensions, `d <= 4`.
pub fn bosonic_classification(sym: BosonicSymmetry, d: u32) -> Result<FinAbGroup> {
    if d > 4 {
        return Err(Error::range(
            "classify",
            d as i32,
            "bordism constants are tabulated for spatial dimension at most 4",
        ));
    }
    let n = d as usize + 1;
    Ok(match sym {
        // MO splits as a wedge of suspensions of HF2, and I_Z HF2 = S^{-1} HF2.
        BosonicSymmetry::NoneT => FinAbGroup::elementary(unoriented_dims(n)[n]),
        BosonicSymmetry::TU1 => {
            let dims = unoriented_dims(n);
            let total: usize = (0..=n).map(|k| dims[k] * cp_inf_mod2_dim((n - k) as i64)).sum();
            FinAbGroup::elementary(total)
        }
        // The AHSS for MSO ^ CP^inf_+ collapses; each even p contributes the
        // Anderson dual of the Wall groups in the neighbouring degrees.
        BosonicSymmetry::U1 => {
            let wall = wall_mso().groups;
            let pi = |k: i64| -> FinAbGroup {
                if k < 0 {
                    FinAbGroup::zero()
                } else {
                    wall[k as usize].clone()
                }
            };
            let mut g = FinAbGroup::zero();
            for p in (0..=d as i64 + 2).step_by(2) {
                g = g.sum(&anderson_dual_group(&pi(d as i64 + 1 - p), &pi(d as i64 + 2 - p)));
            }
            g
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FermionicCase {
    /// Z/2 symmetry in 3+1 dimensions.
    C2Dim4,
    /// Z/2 x Z/4 symmetry in 3+1 dimensions.
    C2xC4Dim4,
    /// (Z/2)^k symmetry in 2+1 dimensions.
    C2kDim3(u32),
    /// `pi_stem` of `M(Spin x_{Z/2} Z/2^n)`.
    SpinZ2n(u32, i32),
}

impl FromStr for FermionicCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim_start_matches("fermionic:");
        let (name, args) = crate::modcat::parse_call(s)?;
        match (name.as_str(), &args[..]) {
            ("C2_dim4", []) => Ok(FermionicCase::C2Dim4),
            ("C2xC4_dim4", []) => Ok(FermionicCase::C2xC4Dim4),
            ("C2k_dim3", [k]) => Ok(FermionicCase::C2kDim3(*k as u32)),
            ("SpinZ2n", [n, stem]) => Ok(FermionicCase::SpinZ2n(*n as u32, *stem as i32)),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    Exact,
    /// The group is nonzero; the exact value is not determined.
    Nontrivial,
    BoundsOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FermionicResult {
    pub group: Option<FinAbGroup>,
    pub certificate: Certificate,
    pub notes: Vec<String>,
}

pub fn fermionic_classification(case: &FermionicCase) -> Result<FermionicResult> {
    match case {
        FermionicCase::C2Dim4 => {
            let x = ahss::space_expression("RPinf", 12)?;
            let r = ahss::ko4_ahss(&x, 5)?;
            let g = ahss::resolve_extensions(&r, ExtensionPolicy::MaximalTorsion)?;
            Ok(FermionicResult {
                group: Some(g),
                certificate: Certificate::Exact,
                notes: r.notes,
            })
        }
        FermionicCase::C2xC4Dim4 => {
            let x = ahss::space_expression("RPinf*BC2n(2)", 12)?;
            let r = ahss::ko4_ahss(&x, 5)?;
            let nontrivial = r.torsion_bounds.0 > 0 || r.rank > 0;
            Ok(FermionicResult {
                group: None,
                certificate: if nontrivial {
                    Certificate::Nontrivial
                } else {
                    Certificate::BoundsOnly
                },
                notes: r.certificates.into_iter().chain(r.notes).collect(),
            })
        }
        FermionicCase::C2kDim3(k) => {
            let x = ahss::space_expression(&format!("RPinf^{k}"), 10)?;
            let r = ahss::ko4_ahss(&x, 4)?;
            match ahss::resolve_extensions(&r, ExtensionPolicy::SwOracle(*k as usize)) {
                Ok(g) => Ok(FermionicResult {
                    group: Some(g),
                    certificate: Certificate::Exact,
                    notes: r.notes,
                }),
                Err(Error::Budget(msg)) if *k >= 4 => {
                    let g = ahss::resolve_extensions(&r, ExtensionPolicy::MaximalTorsion)?;
                    let mut notes = r.notes;
                    notes.push(msg);
                    Ok(FermionicResult {
                        group: Some(g),
                        certificate: Certificate::BoundsOnly,
                        notes,
                    })
                }
                Err(e) => Err(e),
            }
        }
        FermionicCase::SpinZ2n(n, stem) => {
            let readout = mth_pipeline(&MthCase::SpinZ2n(*n), &[*stem])?;
            Ok(FermionicResult {
                group: readout.groups.get(stem).cloned(),
                certificate: Certificate::Exact,
                notes: readout.ambiguities,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "Z", "Z/8", "(Z/2)^3", "Z^2 + Z/2", "Z + Z/4 + (Z/2)^2"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("Z/2 ⊕ Z/4"), g("Z/4 + Z/2"));
        assert!("Z/3".parse::<FinAbGroup>().is_err());
        assert_eq!(g("(Z/8)^3 + (Z/4)^3 + Z/2").length(), 16);
    }

    #[test]
    fn tensor_and_tor() {
        assert_eq!(g("Z/2").tensor(&g("Z/4")), g("Z/2"));
        assert_eq!(g("Z/4").tor(&g("Z/8")), g("Z/4"));
        assert_eq!(g("Z").tensor(&g("Z/4")), g("Z/4"));
        assert_eq!(g("Z").tor(&g("Z/4")), g("0"));
    }

    #[test]
    fn anderson_examples() {
        assert_eq!(anderson_dual_group(&g("Z/16"), &g("0")), g("Z/16"));
        assert_eq!(anderson_dual_group(&g("0"), &g("Z")), g("Z"));
        assert_eq!(anderson_dual_group(&g("Z + Z/2"), &g("Z/4")), g("Z/2"));
    }

    fn enumerate_monomials(d: usize) -> usize {
        // Oracle: count multisets of generator degrees summing to d by brute recursion.
        fn go(d: usize, max: usize) -> usize {
            if d == 0 {
                return 1;
            }
            (2..=max.min(d))
                .filter(|&n| unoriented_generator(n))
                .map(|n| go(d - n, n))
                .sum()
        }
        go(d, d)
    }

    #[test]
    fn unoriented_dims_match_enumeration() {
        let dp = unoriented_dims(14);
        assert_eq!(&dp[..6], &[1, 0, 1, 0, 2, 1]);
        for (d, &x) in dp.iter().enumerate() {
            assert_eq!(x, enumerate_monomials(d), "degree {d}");
        }
    }

    #[test]
    fn bosonic_tables() {
        let table = |sym| -> Vec<String> {
            (0..=4)
                .map(|d| bosonic_classification(sym, d).unwrap().to_string())
                .collect()
        };
        assert_eq!(table(BosonicSymmetry::NoneT), ["0", "Z/2", "0", "(Z/2)^2", "Z/2"]);
        assert_eq!(table(BosonicSymmetry::TU1), ["0", "(Z/2)^2", "0", "(Z/2)^4", "Z/2"]);
        assert_eq!(table(BosonicSymmetry::U1), ["Z", "0", "Z^2", "0", "Z^2 + Z/2"]);
        assert!(bosonic_classification(BosonicSymmetry::U1, 5).is_err());
    }
}
