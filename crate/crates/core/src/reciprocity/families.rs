//! Named CM data with known kernel component groups.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::factorize;
use crate::cmgroup::{
    hyperoctahedral_generators, CmGaloisGroup, CmType, SignVector, SignedPermutation, DEFAULT_CLOSURE_CAP,
};
use crate::error::{Error, Result};

/// Largest prime accepted by [`Family::Cyclic2p`].
pub const MAX_CYCLIC_PRIME: u32 = 23;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// All of `C_g` with `Σ = {1, …, g}`.
    FullCg { g: usize },
    /// `g = 4`, `Fg₀` the Klein four-group of double transpositions, `v = 1`.
    KleinG4,
    /// `g = p`, `Fg = Z/2 × Z/p`, `v = 1`.
    Cyclic2p { p: u32 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::FullCg { g } => write!(f, "full_cg({g})"),
            Family::KleinG4 => write!(f, "klein_g4"),
            Family::Cyclic2p { p } => write!(f, "cyclic_2p({p})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `full_cg(g)`, `klein_g4` or `cyclic_2p(p)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let arg = |prefix: &str| -> Option<&str> { s.strip_prefix(prefix)?.strip_suffix(')') };
        let num = |x: &str| -> Result<u32> {
            x.trim().parse().map_err(|_| Error::Parameter(format!("bad family parameter in {s:?}")))
        };
        if s == "klein_g4" {
            Ok(Family::KleinG4)
        } else if let Some(x) = arg("full_cg(") {
            Ok(Family::FullCg { g: num(x)? as usize })
        } else if let Some(x) = arg("cyclic_2p(") {
            Ok(Family::Cyclic2p { p: num(x)? })
        } else {
            Err(Error::Parameter(format!("unknown family {s:?}")))
        }
    }
}

fn perm(images: &[u32]) -> SignedPermutation {
    SignedPermutation::from_perm(images).expect("family generators are permutations")
}

/// Split group `⟨ρ⟩ × H` conjugated by the sign change at coordinate 1, which
/// gives the section `s(σ) = b + σ^*(b)` with `b = e_1`.
fn twisted(g: usize, perms: &[SignedPermutation]) -> Result<CmGaloisGroup> {
    let mut gens = vec![SignedPermutation::rho(g)];
    gens.extend_from_slice(perms);
    let split = CmGaloisGroup::from_generators(&gens, g, DEFAULT_CLOSURE_CAP)?;
    Ok(split.conjugate_by(&SignedPermutation::flip(g, SignVector(1))))
}

pub fn make_family(family: Family) -> Result<(CmGaloisGroup, CmType)> {
    let (group, g) = match family {
        Family::FullCg { g } => {
            if g == 0 {
                return Err(Error::Parameter("full_cg needs g >= 1".into()));
            }
            if g > 7 {
                return Err(Error::Resource(format!("full_cg({g}) has 2^{g}·{g}! elements")));
            }
            (CmGaloisGroup::from_generators(&hyperoctahedral_generators(g), g, DEFAULT_CLOSURE_CAP)?, g)
        }
        Family::KleinG4 => (twisted(4, &[perm(&[2, 1, 4, 3]), perm(&[3, 4, 1, 2])])?, 4),
        Family::Cyclic2p { p } => {
            if !(3..=MAX_CYCLIC_PRIME).contains(&p) || factorize(p as u64) != [(p as u64, 1)] {
                return Err(Error::Parameter(format!("cyclic_2p needs an odd prime p <= {MAX_CYCLIC_PRIME}, got {p}")));
            }
            let cycle: Vec<u32> = (2..=p).chain(std::iter::once(1)).collect();
            (twisted(p as usize, &[perm(&cycle)])?, p as usize)
        }
    };
    Ok((group, CmType::standard(g)))
}
