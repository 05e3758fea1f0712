//! Uniform entry points over the four homology theories.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cubical_c1::{c1_homology, induced_c1};
use crate::error::{Error, Result};
use crate::image::DigitalImage;
use crate::maps::DigitalMap;
use crate::simplicial::{induced_simplicial, simplicial_homology};
use crate::singular::{general_cubical_homology, induced_general_cubical, induced_singular, singular_homology};
use crate::zmod::{HomologyGroup, InducedMap};

/// Top degree used by the brute-force theories when none is given.
pub const DEFAULT_BRUTE_FORCE_QMAX: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Simplicial,
    Singular,
    Cubical,
    C1,
}

impl Theory {
    pub const ALL: [Theory; 4] = [Theory::Simplicial, Theory::Singular, Theory::Cubical, Theory::C1];

    pub fn name(self) -> &'static str {
        match self {
            Theory::Simplicial => "simplicial",
            Theory::Singular => "singular",
            Theory::Cubical => "cubical",
            Theory::C1 => "c1",
        }
    }

    /// Whether the theory enumerates all maps of a model shape.
    pub fn is_brute_force(self) -> bool {
        matches!(self, Theory::Singular | Theory::Cubical)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theory::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theory {s:?}")))
    }
}

/// H_0, …, H_qmax in the chosen theory. The default `qmax` is the clique
/// dimension (simplicial), the ambient dimension (c1) or
/// [`DEFAULT_BRUTE_FORCE_QMAX`].
pub fn homology(theory: Theory, x: &DigitalImage, qmax: Option<usize>, cap: usize) -> Result<Vec<HomologyGroup>> {
    match theory {
        Theory::Simplicial => simplicial_homology(x, qmax),
        Theory::Singular => singular_homology(x, qmax.unwrap_or(DEFAULT_BRUTE_FORCE_QMAX), cap),
        Theory::Cubical => general_cubical_homology(x, qmax.unwrap_or(DEFAULT_BRUTE_FORCE_QMAX), cap),
        Theory::C1 => c1_homology(x, qmax),
    }
}

pub fn induced(theory: Theory, f: &DigitalMap, q: usize, cap: usize) -> Result<InducedMap> {
    match theory {
        Theory::Simplicial => induced_simplicial(f, q),
        Theory::Singular => induced_singular(f, q, cap),
        Theory::Cubical => induced_general_cubical(f, q, cap),
        Theory::C1 => induced_c1(f, q),
    }
}

/// "H0=Z H1=Z H2=0".
pub fn render_groups(groups: &[HomologyGroup]) -> String {
    groups
        .iter()
        .enumerate()
        .map(|(q, g)| format!("H{q}={g}"))
        .collect::<Vec<_>>()
        .join(" ")
}
