//! The two theories built from all continuous maps of a model shape: singular
//! simplicial homology (maps of the standard simplex, i.e. tuples of pairwise
//! adjacent-or-equal points) and cubical homology over maps (I^q, c₁) → X
//! modulo degenerate cubes. Both bases grow quickly, so everything here is
//! brute force with a hard cap on basis size.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::image::{unit_cube, DigitalImage};
use crate::maps::{ContinuousMaps, DigitalMap};
use crate::simplicial::{orient, SimplicialChain, SimplicialComplex};
use crate::zmod::{check_chain_map, ChainComplex, HomologyGroup, InducedMap, IntMatrix};

/// Bound on the number of generators in any one degree.
pub const DEFAULT_BASIS_CAP: usize = 200_000;

/// All (q+1)-tuples of pairwise adjacent-or-equal points, lexicographically.
pub fn singular_simplices(x: &DigitalImage, q: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    fn rec(
        x: &DigitalImage,
        len: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if cur.len() == len {
            if out.len() == cap {
                return Err(Error::CapExceeded {
                    what: "singular simplex basis",
                    cap,
                    partial: out.len(),
                });
            }
            out.push(cur.clone());
            return Ok(());
        }
        let pool: Vec<usize> = match cur.first() {
            None => (0..x.len()).collect(),
            Some(&p) => {
                let mut v = x.neighbors(p).to_vec();
                v.push(p);
                v.sort_unstable();
                v
            }
        };
        for c in pool {
            if cur.iter().all(|&u| x.adjacent_or_equal(u, c)) {
                cur.push(c);
                rec(x, len, cur, out, cap)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(x, q + 1, &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

/// Bases and index maps of a truncated complex whose generators are vectors
/// of point indices.
#[derive(Clone, Debug)]
struct Indexed {
    bases: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Indexed {
    fn new(bases: Vec<Vec<Vec<usize>>>) -> Self {
        let index = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        Indexed { bases, index }
    }

    fn count(&self, q: usize) -> usize {
        self.bases.get(q).map_or(0, Vec::len)
    }

    fn find(&self, q: usize, key: &[usize]) -> Option<usize> {
        self.index.get(q)?.get(key).copied()
    }
}

/// The singular complex truncated at degree `top`.
#[derive(Clone, Debug)]
pub struct SingularComplex {
    inner: Indexed,
}

impl SingularComplex {
    pub fn new(x: &DigitalImage, top: usize, cap: usize) -> Result<Self> {
        let bases = (0..=top)
            .map(|q| singular_simplices(x, q, cap))
            .collect::<Result<Vec<_>>>()?;
        Ok(SingularComplex {
            inner: Indexed::new(bases),
        })
    }

    pub fn top(&self) -> usize {
        self.inner.bases.len() - 1
    }

    pub fn basis(&self, q: usize) -> &[Vec<usize>] {
        &self.inner.bases[q]
    }

    pub fn count(&self, q: usize) -> usize {
        self.inner.count(q)
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.inner.find(tuple.len().checked_sub(1)?, tuple)
    }

    /// ∂[x_0,…,x_q] = Σ (−1)^i [x_0,…,x̂_i,…,x_q].
    pub fn boundary_matrix(&self, q: usize) -> IntMatrix {
        if q == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        let mut m = IntMatrix::zeros(self.count(q - 1), self.count(q));
        for (j, s) in self.basis(q).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let row = self.inner.find(q - 1, &face).expect("faces of singular simplices are singular");
                m.add_to(row, j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex::new((0..=self.top()).map(|q| self.boundary_matrix(q)).collect())
            .expect("singular boundaries compose")
    }

    pub fn chain_map(&self, target: &SingularComplex, f: &DigitalMap, q: usize) -> Result<IntMatrix> {
        let mut m = IntMatrix::zeros(target.count(q), self.count(q));
        for (j, s) in self.basis(q).iter().enumerate() {
            let image: Vec<usize> = s.iter().map(|&v| f.apply(v)).collect();
            let i = target.inner.find(q, &image).ok_or_else(|| Error::ChainMapViolation {
                witness: format!("singular simplex {s:?}"),
            })?;
            m.set(i, j, 1);
        }
        Ok(m)
    }

    /// Matrix of α in degree q into the clique complex.
    pub fn alpha_matrix(&self, target: &SimplicialComplex, q: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(target.count(q), self.count(q));
        for (j, s) in self.basis(q).iter().enumerate() {
            if let Some((sign, t)) = orient(s) {
                let i = target.index_of(&t).expect("distinct pairwise adjacent points form a clique");
                m.set(i, j, sign);
            }
        }
        m
    }
}

/// H_0, …, H_qmax of the singular complex (built through degree qmax+1).
pub fn singular_homology(x: &DigitalImage, qmax: usize, cap: usize) -> Result<Vec<HomologyGroup>> {
    SingularComplex::new(x, qmax + 1, cap)?.chain_complex().homology_groups()
}

/// α[x_0,…,x_q] = ⟨x_0,…,x_q⟩, extended linearly.
pub fn alpha(q: usize, terms: &[(Vec<usize>, i64)]) -> SimplicialChain {
    let mut out = SimplicialChain::zero(q);
    for (tuple, c) in terms {
        out.add_ordered(tuple, *c);
    }
    out
}

pub fn induced_singular(f: &DigitalMap, q: usize, cap: usize) -> Result<InducedMap> {
    if !f.is_continuous() {
        return Err(Error::Precondition("the map is not continuous".into()));
    }
    let src = SingularComplex::new(f.domain(), q + 1, cap)?;
    let tgt = SingularComplex::new(f.codomain(), q + 1, cap)?;
    let maps = (0..=q + 1)
        .map(|d| src.chain_map(&tgt, f, d))
        .collect::<Result<Vec<_>>>()?;
    let (sc, tc) = (src.chain_complex(), tgt.chain_complex());
    check_chain_map(&sc, &tc, &maps)?;
    InducedMap::compute(q, maps[q].clone(), &sc, &tc)
}

/// A continuous map (I^q, c₁) → X, stored as its values on the corners of
/// {0,1}^q. Corner (t_1,…,t_q) has index Σ t_k 2^(q−k).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingularCube {
    q: usize,
    values: Vec<usize>,
}

impl SingularCube {
    pub fn new(q: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != 1 << q {
            return Err(Error::InvalidArgument(format!(
                "a {q}-cube needs {} corner values, got {}",
                1usize << q,
                values.len()
            )));
        }
        Ok(SingularCube { q, values })
    }

    pub fn dim(&self) -> usize {
        self.q
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    fn bit(&self, axis: usize) -> usize {
        1 << (self.q - axis)
    }

    /// Axes i (1-based) along which the cube is constant.
    pub fn degenerate_axes(&self) -> Vec<usize> {
        (1..=self.q)
            .filter(|&i| {
                let b = self.bit(i);
                (0..self.values.len())
                    .filter(|c| c & b == 0)
                    .all(|c| self.values[c] == self.values[c | b])
            })
            .collect()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degenerate_axes().is_empty()
    }

    /// The face with t_i fixed to `side` (0 gives A_i, 1 gives B_i).
    pub fn face(&self, i: usize, side: bool) -> SingularCube {
        assert!((1..=self.q).contains(&i), "axis out of range");
        let b = self.bit(i);
        let low = b - 1;
        let values = (0..1usize << (self.q - 1))
            .map(|c| {
                let full = ((c & !low) << 1) | (c & low) | if side { b } else { 0 };
                self.values[full]
            })
            .collect();
        SingularCube { q: self.q - 1, values }
    }

    pub fn is_continuous(&self, x: &DigitalImage) -> bool {
        (0..self.values.len()).all(|c| {
            (1..=self.q).all(|i| {
                let b = self.bit(i);
                c & b != 0 || x.adjacent_or_equal(self.values[c], self.values[c | b])
            })
        })
    }
}

/// Every q-cube in X; degenerate ones included.
pub fn general_qcubes(x: &DigitalImage, q: usize, cap: usize) -> Result<Vec<SingularCube>> {
    if q == 0 {
        if x.len() > cap {
            return Err(Error::CapExceeded {
                what: "cube enumeration",
                cap,
                partial: cap,
            });
        }
        return Ok((0..x.len()).map(|p| SingularCube { q: 0, values: vec![p] }).collect());
    }
    let cube = unit_cube(q)?;
    let mut out = Vec::new();
    for values in ContinuousMaps::new(&cube, x) {
        if out.len() == cap {
            return Err(Error::CapExceeded {
                what: "cube enumeration",
                cap,
                partial: out.len(),
            });
        }
        out.push(SingularCube { q, values });
    }
    Ok(out)
}

/// Quotient complex Q_q/D_q truncated at degree `top`: the basis is the
/// nondegenerate cubes and degenerate faces are dropped from boundaries.
#[derive(Clone, Debug)]
pub struct GeneralCubicalComplex {
    inner: Indexed,
}

impl GeneralCubicalComplex {
    pub fn new(x: &DigitalImage, top: usize, cap: usize) -> Result<Self> {
        let bases = (0..=top)
            .map(|q| {
                general_qcubes(x, q, cap).map(|cubes| {
                    cubes
                        .into_iter()
                        .filter(|c| !c.is_degenerate())
                        .map(|c| c.values)
                        .collect()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneralCubicalComplex {
            inner: Indexed::new(bases),
        })
    }

    pub fn top(&self) -> usize {
        self.inner.bases.len() - 1
    }

    pub fn count(&self, q: usize) -> usize {
        self.inner.count(q)
    }

    pub fn cubes(&self, q: usize) -> impl Iterator<Item = SingularCube> + '_ {
        self.inner.bases[q]
            .iter()
            .map(move |v| SingularCube { q, values: v.clone() })
    }

    /// ∂σ = Σ_i (−1)^i (A_iσ − B_iσ), degenerate faces dropped.
    pub fn boundary_matrix(&self, q: usize) -> IntMatrix {
        if q == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        let mut m = IntMatrix::zeros(self.count(q - 1), self.count(q));
        for (j, s) in self.cubes(q).enumerate() {
            for i in 1..=q {
                let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
                for (side, coeff) in [(false, sign), (true, -sign)] {
                    let face = s.face(i, side);
                    if let Some(row) = self.inner.find(q - 1, &face.values) {
                        m.add_to(row, j, coeff);
                    }
                }
            }
        }
        m
    }

    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex::new((0..=self.top()).map(|q| self.boundary_matrix(q)).collect())
            .expect("cubical boundaries compose")
    }

    /// σ ↦ f∘σ, which is zero when f∘σ is degenerate.
    pub fn chain_map(&self, target: &GeneralCubicalComplex, f: &DigitalMap, q: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(target.count(q), self.count(q));
        for (j, s) in self.inner.bases[q].iter().enumerate() {
            let image: Vec<usize> = s.iter().map(|&v| f.apply(v)).collect();
            if let Some(i) = target.inner.find(q, &image) {
                m.set(i, j, 1);
            }
        }
        m
    }
}

pub fn general_cubical_homology(x: &DigitalImage, qmax: usize, cap: usize) -> Result<Vec<HomologyGroup>> {
    GeneralCubicalComplex::new(x, qmax + 1, cap)?.chain_complex().homology_groups()
}

pub fn induced_general_cubical(f: &DigitalMap, q: usize, cap: usize) -> Result<InducedMap> {
    if !f.is_continuous() {
        return Err(Error::Precondition("the map is not continuous".into()));
    }
    let src = GeneralCubicalComplex::new(f.domain(), q + 1, cap)?;
    let tgt = GeneralCubicalComplex::new(f.codomain(), q + 1, cap)?;
    let maps: Vec<IntMatrix> = (0..=q + 1).map(|d| src.chain_map(&tgt, f, d)).collect();
    let (sc, tc) = (src.chain_complex(), tgt.chain_complex());
    check_chain_map(&sc, &tc, &maps)?;
    InducedMap::compute(q, maps[q].clone(), &sc, &tc)
}
