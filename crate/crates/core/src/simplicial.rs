//! Simplicial homology of the clique complex: a q-simplex is a set of q+1
//! mutually adjacent points, oriented by the image's point order.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::image::DigitalImage;
use crate::maps::{one_step_strong, DigitalMap};
use crate::zmod::{check_chain_map, ChainComplex, HomologyGroup, InducedMap, IntMatrix};

/// Canonical representative: strictly increasing point indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Fails unless `vertices` is nonempty and strictly increasing.
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "simplex vertices {vertices:?} are not strictly increasing"
            )));
        }
        Ok(Simplex(vertices))
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Faces with their boundary signs (−1)^i.
    pub fn faces(&self) -> impl Iterator<Item = (i64, Simplex)> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (if i % 2 == 0 { 1 } else { -1 }, Simplex(v))
        })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Sign of the sorting permutation and the sorted simplex, or `None` when a
/// vertex repeats (such an ordered simplex is zero).
pub fn orient(vertices: &[usize]) -> Option<(i64, Simplex)> {
    let mut inversions = 0usize;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            match vertices[i].cmp(&vertices[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, Simplex(sorted)))
}

/// A finitely supported integer combination of q-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialChain {
    q: usize,
    terms: BTreeMap<Simplex, i64>,
}

impl SimplicialChain {
    pub fn zero(q: usize) -> Self {
        SimplicialChain {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &Simplex) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, i64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    /// Adds `coeff` times the ordered simplex ⟨vertices⟩, reordering with
    /// the permutation sign; repeated vertices contribute nothing.
    pub fn add_ordered(&mut self, vertices: &[usize], coeff: i64) {
        assert_eq!(vertices.len(), self.q + 1, "simplex of the wrong dimension");
        if let Some((sign, s)) = orient(vertices) {
            self.add(s, sign * coeff);
        }
    }

    pub fn add(&mut self, s: Simplex, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(s) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add_chain(&mut self, other: &SimplicialChain, scale: i64) {
        for (s, c) in other.terms() {
            self.add(s.clone(), scale * c);
        }
    }

    pub fn boundary(&self) -> SimplicialChain {
        let mut out = SimplicialChain::zero(self.q.saturating_sub(1));
        if self.q == 0 {
            return out;
        }
        for (s, c) in self.terms() {
            for (sign, face) in s.faces() {
                out.add(face, sign * c);
            }
        }
        out
    }

    /// Image under a vertex map, with the degeneracy and sign rules.
    pub fn push_forward(&self, f: &DigitalMap) -> SimplicialChain {
        let mut out = SimplicialChain::zero(self.q);
        for (s, c) in self.terms() {
            let image: Vec<usize> = s.vertices().iter().map(|&v| f.apply(v)).collect();
            out.add_ordered(&image, c);
        }
        out
    }
}

impl fmt::Display for SimplicialChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(s, c)| format!("{c}{s}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// All (q+1)-cliques for q ≤ qmax, canonically sorted.
pub fn cliques(x: &DigitalImage, qmax: usize) -> Vec<Vec<Simplex>> {
    let mut out = vec![Vec::new(); qmax + 1];
    let mut current = Vec::new();
    for v in 0..x.len() {
        current.push(v);
        extend_clique(x, qmax, &mut current, &mut out);
        current.pop();
    }
    for level in &mut out {
        level.sort();
    }
    out
}

fn extend_clique(x: &DigitalImage, qmax: usize, current: &mut Vec<usize>, out: &mut [Vec<Simplex>]) {
    out[current.len() - 1].push(Simplex(current.clone()));
    if current.len() > qmax {
        return;
    }
    let last = *current.last().unwrap();
    for &w in x.neighbors(last) {
        if w > last && current.iter().all(|&u| x.adjacent(u, w)) {
            current.push(w);
            extend_clique(x, qmax, current, out);
            current.pop();
        }
    }
}

/// Largest q with a q-simplex (0 for an empty image).
pub fn clique_dimension(x: &DigitalImage) -> usize {
    fn grow(x: &DigitalImage, current: &mut Vec<usize>, best: &mut usize) {
        *best = (*best).max(current.len());
        let last = *current.last().unwrap();
        for &w in x.neighbors(last) {
            if w > last && current.iter().all(|&u| x.adjacent(u, w)) {
                current.push(w);
                grow(x, current, best);
                current.pop();
            }
        }
    }
    let mut best = 0;
    for v in 0..x.len() {
        grow(x, &mut vec![v], &mut best);
    }
    best.saturating_sub(1)
}

/// The clique complex truncated at dimension `top`.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    pub fn new(x: &DigitalImage, top: usize) -> Self {
        let simplices = cliques(x, top);
        let index = simplices
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        SimplicialComplex { simplices, index }
    }

    pub fn top(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.simplices.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    /// ∂_q as a matrix from q-simplices to (q−1)-simplices; ∂_0 has no rows.
    pub fn boundary_matrix(&self, q: usize) -> IntMatrix {
        if q == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        let mut m = IntMatrix::zeros(self.count(q - 1), self.count(q));
        for (j, s) in self.simplices(q).iter().enumerate() {
            for (sign, face) in s.faces() {
                let i = self.index[q - 1][&face];
                m.set(i, j, sign);
            }
        }
        m
    }

    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex::new((0..=self.top()).map(|q| self.boundary_matrix(q)).collect())
            .expect("clique boundaries compose")
    }

    pub fn chain_vector(&self, chain: &SimplicialChain) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); self.count(chain.dim())];
        for (s, c) in chain.terms() {
            let i = self.index_of(s).expect("simplex belongs to the complex");
            v[i] += c;
        }
        v
    }

    pub fn chain_from_vector(&self, q: usize, v: &[BigInt]) -> SimplicialChain {
        let mut out = SimplicialChain::zero(q);
        for (s, c) in self.simplices(q).iter().zip(v) {
            let c = i64::try_from(c).expect("chain coefficient fits in i64");
            out.add(s.clone(), c);
        }
        out
    }

    /// Matrix of f_# in degree q from this complex to `target`.
    pub fn chain_map(&self, target: &SimplicialComplex, f: &DigitalMap, q: usize) -> Result<IntMatrix> {
        let mut m = IntMatrix::zeros(target.count(q), self.count(q));
        for (j, s) in self.simplices(q).iter().enumerate() {
            let image: Vec<usize> = s.vertices().iter().map(|&v| f.apply(v)).collect();
            if let Some((sign, t)) = orient(&image) {
                let i = target.index_of(&t).ok_or_else(|| Error::ChainMapViolation {
                    witness: format!("{s} maps to {t}, which is not a clique"),
                })?;
                m.set(i, j, sign);
            }
        }
        Ok(m)
    }
}

pub fn boundary_matrix_simplicial(x: &DigitalImage, q: usize) -> IntMatrix {
    SimplicialComplex::new(x, q).boundary_matrix(q)
}

/// H_0, …, H_qmax; `qmax` defaults to the clique dimension.
pub fn simplicial_homology(x: &DigitalImage, qmax: Option<usize>) -> Result<Vec<HomologyGroup>> {
    let qmax = qmax.unwrap_or_else(|| clique_dimension(x));
    SimplicialComplex::new(x, qmax + 1).chain_complex().homology_groups()
}

/// f_# and f_* in degree q.
pub fn induced_simplicial(f: &DigitalMap, q: usize) -> Result<InducedMap> {
    if !f.is_continuous() {
        return Err(Error::Precondition("the map is not continuous".into()));
    }
    let src = SimplicialComplex::new(f.domain(), q + 1);
    let tgt = SimplicialComplex::new(f.codomain(), q + 1);
    let maps = (0..=q + 1)
        .map(|d| src.chain_map(&tgt, f, d))
        .collect::<Result<Vec<_>>>()?;
    let (sc, tc) = (src.chain_complex(), tgt.chain_complex());
    check_chain_map(&sc, &tc, &maps)?;
    InducedMap::compute(q, maps[q].clone(), &sc, &tc)
}

/// P(σ) = Σ_j (−1)^j ⟨f(x_0),…,f(x_j),g(x_j),…,g(x_q)⟩ for a punctuated
/// step f → g; satisfies ∂P(σ) = g_#(σ) − f_#(σ) − P(∂σ).
pub fn prism_simplicial(f: &DigitalMap, g: &DigitalMap, sigma: &Simplex) -> Result<SimplicialChain> {
    if !one_step_strong(f, g)? {
        return Err(Error::Precondition(
            "prism needs maps that are strongly homotopic in one step".into(),
        ));
    }
    let moved = f
        .assignment()
        .iter()
        .zip(g.assignment())
        .filter(|(a, b)| a != b)
        .count();
    if moved > 1 {
        return Err(Error::Precondition(format!(
            "prism needs maps differing at no more than one point, these differ at {moved}"
        )));
    }
    Ok(prism_unchecked(f, g, sigma))
}

fn prism_unchecked(f: &DigitalMap, g: &DigitalMap, sigma: &Simplex) -> SimplicialChain {
    let xs = sigma.vertices();
    let mut out = SimplicialChain::zero(sigma.dim() + 1);
    for j in 0..xs.len() {
        let tuple: Vec<usize> = xs[..=j]
            .iter()
            .map(|&v| f.apply(v))
            .chain(xs[j..].iter().map(|&v| g.apply(v)))
            .collect();
        out.add_ordered(&tuple, if j % 2 == 0 { 1 } else { -1 });
    }
    out
}
