//! Upper bound for the rank of the Bogomolov multiplier read off a presentation:
//! `d(B0(Q)) <= r - r_K - d(Q)`, where `r_K` counts relators that are
//! commutators in the free group.

use serde::{Deserialize, Serialize};

use crate::cohomology::SCHEMA_VERSION;
use crate::coset::Word;
use crate::error::{Error, Result};
use crate::group::{build_group, parse_word, GroupSpec};

/// A presentation with optional per-relator commutator flags.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationBoundInput {
    pub generators: usize,
    pub relators: Vec<String>,
    /// When absent the flags are detected syntactically.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutator: Option<Vec<bool>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Minimality {
    /// `d(Q)` equals the generator count.
    Verified,
    /// The group could not be built within the caps.
    Unverified,
    /// The group needs fewer generators than the presentation has.
    Fails,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub generators: usize,
    pub relators: usize,
    pub commutator_relators: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_generators: Option<usize>,
    pub minimality: Minimality,
    /// `None` when the presentation is not minimal.
    pub bound: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Free reduction of a word in signed generator indices.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

/// Whether the freely reduced word is literally `u^-1 v^-1 u v` for some
/// nonempty reduced words `u`, `v`.
pub fn is_commutator_shaped(w: &[i32]) -> bool {
    let w = free_reduce(w);
    let len = w.len();
    if len < 4 || len % 2 != 0 {
        return false;
    }
    let half = len / 2;
    (1..half).any(|lu| {
        let u = &w[half..half + lu];
        let v = &w[half + lu..];
        w[..lu] == inverse(u)[..] && w[lu..half] == inverse(v)[..]
    })
}

/// Evaluates the bound, checking minimality against the built group when possible.
pub fn presentation_rank_bound(input: &PresentationBoundInput) -> Result<BoundReport> {
    let words = input
        .relators
        .iter()
        .map(|r| parse_word(r, input.generators))
        .collect::<Result<Vec<_>>>()?;
    let detected: Vec<bool> = words.iter().map(|w| is_commutator_shaped(w)).collect();
    let flags = match &input.commutator {
        None => detected,
        Some(f) => {
            if f.len() != words.len() {
                return Err(Error::MalformedSpec("one commutator flag per relator".into()));
            }
            if let Some(i) = f.iter().zip(&detected).position(|(&flag, &shape)| flag && !shape) {
                return Err(Error::MalformedSpec(format!(
                    "relator `{}` is flagged but not of commutator shape",
                    input.relators[i]
                )));
            }
            f.clone()
        }
    };
    let r = words.len();
    let r_k = flags.iter().filter(|&&f| f).count();
    let raw = (r as i64 - r_k as i64 - input.generators as i64).max(0) as u64;
    let mut warnings = Vec::new();
    let spec = GroupSpec::Presentation {
        generators: input.generators,
        relators: input.relators.clone(),
    };
    let (group_order, minimal_generators, minimality) = match build_group(&spec) {
        Ok(g) => {
            let d = if g.order() == 1 {
                0
            } else if g.prime_power().is_some() {
                g.abelianization().invariants.len()
            } else {
                g.minimal_generator_count(input.generators.max(1))?
            };
            let m = if d == input.generators {
                Minimality::Verified
            } else {
                Minimality::Fails
            };
            (Some(g.order()), Some(d), m)
        }
        Err(Error::PresentationTooLarge { .. } | Error::CapExceeded { .. }) => {
            warnings.push("unverified minimality: group not buildable at desk scale".into());
            (None, None, Minimality::Unverified)
        }
        Err(e) => return Err(e),
    };
    Ok(BoundReport {
        schema_version: SCHEMA_VERSION,
        generators: input.generators,
        relators: r,
        commutator_relators: r_k,
        group_order,
        minimal_generators,
        minimality,
        bound: (minimality != Minimality::Fails).then_some(raw),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, d: usize) -> Word {
        parse_word(s, d).unwrap()
    }

    #[test]
    fn commutator_shapes() {
        assert!(is_commutator_shaped(&word("ABab", 2)));
        assert!(is_commutator_shaped(&word("BBAbab", 2)));
        assert!(!is_commutator_shaped(&word("abab", 2)));
        assert!(!is_commutator_shaped(&word("aa", 1)));
        // reduces to ABab
        assert!(is_commutator_shaped(&word("ABcCab", 3)));
    }

    #[test]
    fn cyclic_bound_is_zero() {
        let r = presentation_rank_bound(&PresentationBoundInput {
            generators: 1,
            relators: vec!["aaaaa".into()],
            commutator: None,
        })
        .unwrap();
        assert_eq!(r.bound, Some(0));
        assert_eq!(r.minimality, Minimality::Verified);
    }

    #[test]
    fn non_minimal_is_not_applicable() {
        let r = presentation_rank_bound(&PresentationBoundInput {
            generators: 2,
            relators: vec!["aa".into(), "b".into()],
            commutator: None,
        })
        .unwrap();
        assert_eq!(r.bound, None);
    }

    #[test]
    fn false_flag_is_rejected() {
        let r = presentation_rank_bound(&PresentationBoundInput {
            generators: 1,
            relators: vec!["aa".into()],
            commutator: Some(vec![true]),
        });
        assert!(r.is_err());
    }
}
