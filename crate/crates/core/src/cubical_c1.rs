//! Homology of c₁ images in ℤⁿ built from elementary cubes, with induced
//! maps signed by the orientation of each embedded cube.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::image::{DigitalImage, Point};
use crate::maps::{one_step_homotopic, DigitalMap};
use crate::zmod::{ChainComplex, HomologyGroup, InducedMap, IntMatrix};

/// {low} or {low, low+1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementaryInterval {
    pub low: i64,
    pub degenerate: bool,
}

impl ElementaryInterval {
    pub fn point(a: i64) -> Self {
        ElementaryInterval {
            low: a,
            degenerate: true,
        }
    }

    pub fn unit(a: i64) -> Self {
        ElementaryInterval {
            low: a,
            degenerate: false,
        }
    }

    pub fn high(&self) -> i64 {
        if self.degenerate {
            self.low
        } else {
            self.low + 1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryCube {
    intervals: Vec<ElementaryInterval>,
}

impl ElementaryCube {
    pub fn new(intervals: Vec<ElementaryInterval>) -> Self {
        ElementaryCube { intervals }
    }

    /// The cube with minimum corner `min` spanning the listed axes (0-based).
    pub fn from_corner(min: &[i64], axes: &[usize]) -> Self {
        ElementaryCube {
            intervals: min
                .iter()
                .enumerate()
                .map(|(k, &a)| ElementaryInterval {
                    low: a,
                    degenerate: !axes.contains(&k),
                })
                .collect(),
        }
    }

    pub fn intervals(&self) -> &[ElementaryInterval] {
        &self.intervals
    }

    pub fn ambient_dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn dim(&self) -> usize {
        self.intervals.iter().filter(|i| !i.degenerate).count()
    }

    /// Nondegenerate axes j_1 < … < j_q, 0-based.
    pub fn axes(&self) -> Vec<usize> {
        (0..self.intervals.len())
            .filter(|&k| !self.intervals[k].degenerate)
            .collect()
    }

    pub fn min_corner(&self) -> Vec<i64> {
        self.intervals.iter().map(|i| i.low).collect()
    }

    /// The 2^q points; corner b has bit (q−k) set when it sits at the top of
    /// the k-th nondegenerate axis.
    pub fn corners(&self) -> Vec<Point> {
        let axes = self.axes();
        let q = axes.len();
        let base = self.min_corner();
        (0..1usize << q)
            .map(|b| {
                let mut p = base.clone();
                for (k, &ax) in axes.iter().enumerate() {
                    if b >> (q - 1 - k) & 1 == 1 {
                        p[ax] += 1;
                    }
                }
                Point(p)
            })
            .collect()
    }

    /// A_i (side = false) or B_i (side = true) along axis `axis` (0-based).
    pub fn face(&self, axis: usize, side: bool) -> ElementaryCube {
        let mut intervals = self.intervals.clone();
        let j = intervals[axis];
        intervals[axis] = ElementaryInterval::point(if side { j.high() } else { j.low });
        ElementaryCube { intervals }
    }

    /// I × Q, the new axis first.
    pub fn times_interval(&self) -> ElementaryCube {
        let mut intervals = vec![ElementaryInterval::unit(0)];
        intervals.extend_from_slice(&self.intervals);
        ElementaryCube { intervals }
    }

    /// ∂Q = Σ_i (−1)^i (A_{j_i}Q − B_{j_i}Q), i counting from 1.
    pub fn boundary(&self) -> Vec<(i64, ElementaryCube)> {
        let mut out = Vec::new();
        for (k, ax) in self.axes().into_iter().enumerate() {
            let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
            out.push((sign, self.face(ax, false)));
            out.push((-sign, self.face(ax, true)));
        }
        out
    }
}

impl Ord for ElementaryCube {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.min_corner().cmp(&other.min_corner()))
            .then_with(|| self.axes().cmp(&other.axes()))
            .then_with(|| self.intervals.len().cmp(&other.intervals.len()))
    }
}

impl PartialOrd for ElementaryCube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementaryCube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|i| {
                if i.degenerate {
                    format!("[{}]", i.low)
                } else {
                    format!("[{},{}]", i.low, i.low + 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// How a map of corners sits on its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CornerImage {
    /// Bijective and affine onto an elementary cube, with orientation ±1.
    Embedding { sign: i64, cube: ElementaryCube },
    /// Bijective onto an elementary cube but not the restriction of an
    /// affine map.
    Incompatible { cube: ElementaryCube },
    NotEmbedding,
}

impl CornerImage {
    pub fn sign(&self) -> i64 {
        match self {
            CornerImage::Embedding { sign, .. } => *sign,
            _ => 0,
        }
    }
}

/// Classifies the images of the 2^q corners of a q-cube (indexed as in
/// [`ElementaryCube::corners`]).
pub fn classify_corner_image(q: usize, image: &[Point]) -> CornerImage {
    assert_eq!(image.len(), 1 << q, "expected 2^q corner images");
    let m = image[0].dim();
    let mut lo = image[0].0.clone();
    let mut hi = image[0].0.clone();
    for p in image {
        for k in 0..m {
            lo[k] = lo[k].min(p.0[k]);
            hi[k] = hi[k].max(p.0[k]);
        }
    }
    if (0..m).any(|k| hi[k] - lo[k] > 1) {
        return CornerImage::NotEmbedding;
    }
    let axes: Vec<usize> = (0..m).filter(|&k| hi[k] > lo[k]).collect();
    if axes.len() != q || image.iter().collect::<HashSet<_>>().len() != image.len() {
        return CornerImage::NotEmbedding;
    }
    let cube = ElementaryCube::from_corner(&lo, &axes);

    // columns: f(c0 + e_k) − f(c0) in the image cube's axes
    let origin = &image[0];
    let mut matrix = vec![vec![0i64; q]; q];
    for k in 0..q {
        let p = &image[1 << (q - 1 - k)];
        for (r, &ax) in axes.iter().enumerate() {
            matrix[r][k] = p.0[ax] - origin.0[ax];
        }
    }
    for (b, p) in image.iter().enumerate() {
        for (r, &ax) in axes.iter().enumerate() {
            let predicted = origin.0[ax]
                + (0..q)
                    .filter(|&k| b >> (q - 1 - k) & 1 == 1)
                    .map(|k| matrix[r][k])
                    .sum::<i64>();
            if predicted != p.0[ax] {
                return CornerImage::Incompatible { cube };
            }
        }
    }
    let sign = small_determinant(&matrix);
    if sign.abs() != 1 {
        return CornerImage::Incompatible { cube };
    }
    CornerImage::Embedding { sign, cube }
}

fn small_determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mat = IntMatrix::from_fn(n, n, |i, j| m[i][j].into());
    i64::try_from(mat.determinant()).expect("small determinant")
}

/// ε_{f,Q}: ±1 when f embeds Q onto an elementary cube, 0 otherwise.
pub fn cube_embedding_sign(f: &DigitalMap, cube: &ElementaryCube) -> Result<i64> {
    Ok(image_of_cube(f, cube)?.sign())
}

pub fn image_of_cube(f: &DigitalMap, cube: &ElementaryCube) -> Result<CornerImage> {
    let (x, y) = (f.domain(), f.codomain());
    require_c1(x)?;
    require_c1(y)?;
    let mut image = Vec::with_capacity(1 << cube.dim());
    for p in cube.corners() {
        let i = x.index_of(&p).ok_or_else(|| Error::PointNotInImage(p.to_string()))?;
        image.push(y.point(f.apply(i)).clone());
    }
    Ok(classify_corner_image(cube.dim(), &image))
}

fn require_c1(x: &DigitalImage) -> Result<()> {
    if x.is_c1() && x.dim() > 0 {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "elementary-cube homology needs a lattice image with c1 adjacency".into(),
        ))
    }
}

/// All elementary cubes contained in X, grouped by dimension 0..=n.
pub fn elementary_cubes(x: &DigitalImage) -> Result<Vec<Vec<ElementaryCube>>> {
    require_c1(x)?;
    let n = x.dim();
    let mut out = vec![Vec::new(); n + 1];
    for p in x.points() {
        for mask in 0u32..(1 << n) {
            let axes: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
            let cube = ElementaryCube::from_corner(&p.0, &axes);
            if cube.corners().iter().all(|c| x.index_of(c).is_some()) {
                out[axes.len()].push(cube);
            }
        }
    }
    for level in &mut out {
        level.sort();
    }
    Ok(out)
}

/// A finitely supported integer combination of elementary cubes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CubicalChain {
    terms: BTreeMap<ElementaryCube, i64>,
}

impl CubicalChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &ElementaryCube) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ElementaryCube, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn add(&mut self, c: ElementaryCube, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(c) {
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

    pub fn add_chain(&mut self, other: &CubicalChain, scale: i64) {
        for (c, k) in other.terms() {
            self.add(c.clone(), scale * k);
        }
    }

    pub fn single(c: ElementaryCube) -> Self {
        let mut out = Self::zero();
        out.add(c, 1);
        out
    }

    pub fn boundary(&self) -> CubicalChain {
        let mut out = CubicalChain::zero();
        for (c, k) in self.terms() {
            for (s, face) in c.boundary() {
                out.add(face, s * k);
            }
        }
        out
    }

    /// f̄_#: Q ↦ ε_{f,Q} f(Q).
    pub fn push_forward(&self, f: &DigitalMap) -> Result<CubicalChain> {
        let mut out = CubicalChain::zero();
        for (c, k) in self.terms() {
            if let CornerImage::Embedding { sign, cube } = image_of_cube(f, c)? {
                out.add(cube, sign * k);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CubicalChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(c, k)| format!("{k}{c}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub struct CubicalComplex {
    cubes: Vec<Vec<ElementaryCube>>,
    index: Vec<HashMap<ElementaryCube, usize>>,
}

impl CubicalComplex {
    pub fn new(x: &DigitalImage) -> Result<Self> {
        let cubes = elementary_cubes(x)?;
        let index = cubes
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        Ok(CubicalComplex { cubes, index })
    }

    pub fn ambient_dim(&self) -> usize {
        self.cubes.len() - 1
    }

    pub fn cubes(&self, q: usize) -> &[ElementaryCube] {
        self.cubes.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.cubes(q).len()
    }

    pub fn index_of(&self, c: &ElementaryCube) -> Option<usize> {
        self.index.get(c.dim())?.get(c).copied()
    }

    pub fn boundary_matrix(&self, q: usize) -> IntMatrix {
        if q == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        let mut m = IntMatrix::zeros(self.count(q - 1), self.count(q));
        for (j, c) in self.cubes(q).iter().enumerate() {
            for (s, face) in c.boundary() {
                m.add_to(self.index[q - 1][&face], j, s);
            }
        }
        m
    }

    /// Boundaries ∂_0, …, ∂_top.
    pub fn chain_complex(&self, top: usize) -> ChainComplex {
        ChainComplex::new((0..=top).map(|q| self.boundary_matrix(q)).collect())
            .expect("cube boundaries compose")
    }

    pub fn chain_vector(&self, q: usize, chain: &CubicalChain) -> Vec<num_bigint::BigInt> {
        let mut v = vec![num_bigint::BigInt::from(0); self.count(q)];
        for (c, k) in chain.terms() {
            v[self.index_of(c).expect("cube belongs to the complex")] += k;
        }
        v
    }

    /// Matrix of f̄_# in degree q from this complex to `target`.
    pub fn chain_map(&self, target: &CubicalComplex, f: &DigitalMap, q: usize) -> Result<IntMatrix> {
        let mut m = IntMatrix::zeros(target.count(q), self.count(q));
        for (j, c) in self.cubes(q).iter().enumerate() {
            if let CornerImage::Embedding { sign, cube } = image_of_cube(f, c)? {
                let i = target.index_of(&cube).expect("image cube lies in the codomain");
                m.set(i, j, sign);
            }
        }
        Ok(m)
    }
}

pub fn boundary_matrix_c1(x: &DigitalImage, q: usize) -> Result<IntMatrix> {
    Ok(CubicalComplex::new(x)?.boundary_matrix(q))
}

/// H_0, …, H_qmax; `qmax` defaults to the ambient dimension.
pub fn c1_homology(x: &DigitalImage, qmax: Option<usize>) -> Result<Vec<HomologyGroup>> {
    let k = CubicalComplex::new(x)?;
    let qmax = qmax.unwrap_or(k.ambient_dim());
    k.chain_complex(qmax + 1).homology_groups()
}

/// Checks f̄_#∂Q = ∂f̄_#Q for every cube of dimension 1..=top, naming the
/// first cube where it fails.
pub fn check_c1_chain_map(f: &DigitalMap, top: usize) -> Result<()> {
    let src = CubicalComplex::new(f.domain())?;
    for q in 1..=top.min(src.ambient_dim()) {
        for c in src.cubes(q) {
            let single = CubicalChain::single(c.clone());
            let left = single.boundary().push_forward(f)?;
            let right = single.push_forward(f)?.boundary();
            if left != right {
                return Err(Error::ChainMapViolation {
                    witness: format!("cube {c} under {f}"),
                });
            }
        }
    }
    Ok(())
}

/// f̄_# and f̄_* in degree q.
pub fn induced_c1(f: &DigitalMap, q: usize) -> Result<InducedMap> {
    if !f.is_continuous() {
        return Err(Error::Precondition("the map is not continuous".into()));
    }
    let src = CubicalComplex::new(f.domain())?;
    let tgt = CubicalComplex::new(f.codomain())?;
    check_c1_chain_map(f, q + 1)?;
    let chain = src.chain_map(&tgt, f, q)?;
    InducedMap::compute(q, chain, &src.chain_complex(q + 1), &tgt.chain_complex(q + 1))
}

/// P(Q) = T̄_#(I × Q) for T(0, x) = f(x), T(1, x) = g(x). It is ±(f(Q) ∪ g(Q))
/// when that set is an elementary (q+1)-cube embedded by T, else 0.
pub fn prism_c1(f: &DigitalMap, g: &DigitalMap, cube: &ElementaryCube) -> Result<CubicalChain> {
    if !one_step_homotopic(f, g)? {
        return Err(Error::Precondition("prism needs maps homotopic in one step".into()));
    }
    let x = f.domain();
    let y = f.codomain();
    let q = cube.dim();
    let mut image = Vec::with_capacity(2 << q);
    for map in [f, g] {
        for p in cube.corners() {
            let i = x.index_of(&p).ok_or_else(|| Error::PointNotInImage(p.to_string()))?;
            image.push(y.point(map.apply(i)).clone());
        }
    }
    let mut out = CubicalChain::zero();
    if let CornerImage::Embedding { sign, cube } = classify_corner_image(q + 1, &image) {
        out.add(cube, sign);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{box_image, box_points, embed_cycle, mss6, unit_cube};
    use crate::maps::ContinuousMaps;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn counts(x: &DigitalImage) -> Vec<usize> {
        elementary_cubes(x).unwrap().iter().map(Vec::len).collect()
    }

    #[test]
    fn elementary_cube_examples() {
        assert_eq!(counts(&embed_cycle(4).unwrap()), vec![4, 4, 1]);
        assert_eq!(counts(&embed_cycle(8).unwrap()), vec![8, 8, 0]);
        assert_eq!(counts(&unit_cube(3).unwrap()), vec![8, 12, 6, 1]);
        let c4 = crate::image::cycle_image(4).unwrap();
        assert!(matches!(elementary_cubes(&c4), Err(Error::Unsupported(_))));
        let c2 = box_image(1, 2, 2).unwrap();
        assert!(elementary_cubes(&c2).is_err());
    }

    #[test]
    fn cube_counts_match_subset_oracle() {
        // 3x3 grid: an elementary cube is a subset whose coordinate spans are
        // all 0 or 1 and which fills its bounding box
        let x = box_image(2, 2, 1).unwrap();
        let pts = x.points();
        let mut expected = vec![0usize; 3];
        for mask in 1u32..(1 << pts.len()) {
            let sub: Vec<&Point> = (0..pts.len()).filter(|i| mask >> i & 1 == 1).map(|i| &pts[i]).collect();
            let span: Vec<i64> = (0..2)
                .map(|k| sub.iter().map(|p| p.0[k]).max().unwrap() - sub.iter().map(|p| p.0[k]).min().unwrap())
                .collect();
            if span.iter().all(|&s| s <= 1) {
                let d = span.iter().filter(|&&s| s == 1).count();
                if sub.len() == 1 << d {
                    expected[d] += 1;
                }
            }
        }
        assert_eq!(counts(&x), expected);
    }

    #[test]
    fn face_examples() {
        let sq = ElementaryCube::from_corner(&[0, 0, 5], &[0, 1]);
        assert_eq!(sq.face(2, false), sq);
        assert_eq!(sq.face(2, true), sq);
        let left = sq.face(0, false);
        assert_eq!(left, ElementaryCube::from_corner(&[0, 0, 5], &[1]));
        assert_eq!(left.dim(), 1);
        assert_eq!(sq.face(0, true), ElementaryCube::from_corner(&[1, 0, 5], &[1]));
    }

    #[test]
    fn boundary_examples() {
        let edge = ElementaryCube::from_corner(&[3], &[0]);
        let b = CubicalChain::single(edge).boundary();
        assert_eq!(b.coefficient(&ElementaryCube::from_corner(&[4], &[])), 1);
        assert_eq!(b.coefficient(&ElementaryCube::from_corner(&[3], &[])), -1);

        let sq = embed_cycle(4).unwrap();
        let k = CubicalComplex::new(&sq).unwrap();
        assert!(k.boundary_matrix(1).mul(&k.boundary_matrix(2)).is_zero());
        let d2 = k.boundary_matrix(2).column(0);
        assert_eq!(d2.len(), 4);
        assert!(d2.iter().all(|c| c == &1.into() || c == &(-1).into()));
    }

    #[test]
    fn boundary_squares_to_zero_on_corpus() {
        for x in [unit_cube(3).unwrap(), mss6(), box_image(2, 2, 1).unwrap(), unit_cube(4).unwrap()] {
            let k = CubicalComplex::new(&x).unwrap();
            assert!(k.chain_complex(k.ambient_dim()).is_chain_complex());
        }
    }

    #[test]
    fn homology_examples() {
        let z = HomologyGroup::free(1);
        let o = HomologyGroup::trivial();
        assert_eq!(c1_homology(&embed_cycle(4).unwrap(), Some(2)).unwrap(), vec![z.clone(), o.clone(), o.clone()]);
        assert_eq!(
            c1_homology(&unit_cube(3).unwrap(), None).unwrap(),
            vec![z.clone(), o.clone(), o.clone(), o.clone()]
        );
        assert_eq!(c1_homology(&mss6(), None).unwrap(), vec![z.clone(), o.clone(), z.clone(), o.clone()]);
        for m in [6, 8, 10, 12] {
            assert_eq!(c1_homology(&embed_cycle(m).unwrap(), Some(1)).unwrap(), vec![z.clone(), z.clone()]);
        }
    }

    /// Oracle: search all signed permutations and translations.
    fn affine_sign(q: usize, image: &[Point]) -> Option<i64> {
        let m = image[0].dim();
        let axes_choices = permutations_of_subsets(m, q);
        for axes in axes_choices {
            for signs in 0u32..(1 << q) {
                let origin = &image[0];
                let ok = image.iter().enumerate().all(|(b, p)| {
                    let mut expect = origin.0.clone();
                    for k in 0..q {
                        if b >> (q - 1 - k) & 1 == 1 {
                            expect[axes[k]] += if signs >> k & 1 == 1 { -1 } else { 1 };
                        }
                    }
                    expect == p.0
                });
                if ok {
                    // sign of the permutation sorting `axes` times the reflections
                    let mut inv = 0;
                    for i in 0..q {
                        for j in i + 1..q {
                            if axes[i] > axes[j] {
                                inv += 1;
                            }
                        }
                    }
                    let flips = signs.count_ones();
                    return Some(if (inv + flips) % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        None
    }

    fn permutations_of_subsets(m: usize, q: usize) -> Vec<Vec<usize>> {
        fn rec(m: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == q {
                out.push(cur.clone());
                return;
            }
            for a in 0..m {
                if !cur.contains(&a) {
                    cur.push(a);
                    rec(m, q, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(m, q, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn orientation_matches_signed_permutation_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in 0..=3 {
            let cube = ElementaryCube::from_corner(&vec![0; q], &(0..q).collect::<Vec<_>>());
            let corners = cube.corners();
            for _ in 0..200 {
                // random signed permutation of a cube in Z^(q+1), sometimes broken
                let m = q + 1;
                let mut axes: Vec<usize> = (0..m).collect();
                axes.shuffle(&mut rng);
                let signs: Vec<i64> = (0..q).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
                let shift: Vec<i64> = (0..m).map(|_| rng.gen_range(-2..=2)).collect();
                let mut image: Vec<Point> = corners
                    .iter()
                    .map(|c| {
                        let mut p = shift.clone();
                        for k in 0..q {
                            p[axes[k]] += signs[k] * c.0[k];
                        }
                        Point(p)
                    })
                    .collect();
                if rng.gen_bool(0.3) && q > 0 {
                    let a = rng.gen_range(0..image.len());
                    let b = rng.gen_range(0..image.len());
                    image.swap(a, b);
                }
                let got = classify_corner_image(q, &image).sign();
                assert_eq!(got, affine_sign(q, &image).unwrap_or(0), "{image:?}");
            }
        }
    }

    #[test]
    fn continuous_bijections_of_small_cubes_are_affine() {
        for q in 1..=3 {
            let cube = Arc::new(unit_cube(q).unwrap());
            for a in ContinuousMaps::new(&cube, &cube) {
                let image: Vec<Point> = a.iter().map(|&i| cube.point(i).clone()).collect();
                assert!(!matches!(classify_corner_image(q, &image), CornerImage::Incompatible { .. }));
            }
        }
    }

    #[test]
    fn embedding_sign_examples() {
        let x = Arc::new(unit_cube(2).unwrap());
        let id = DigitalMap::identity(x.clone());
        for level in elementary_cubes(&x).unwrap() {
            for c in level {
                assert_eq!(cube_embedding_sign(&id, &c).unwrap(), 1);
            }
        }
        let a = Arc::new(DigitalImage::lattice(vec![[0].into(), [1].into()], 1).unwrap());
        let b = Arc::new(DigitalImage::lattice(vec![[-1].into(), [0].into()], 1).unwrap());
        // x ↦ −x: index 0 (=0) ↦ index 1 (=0), index 1 (=1) ↦ index 0 (=−1)
        let refl = DigitalMap::new(a.clone(), b, vec![1, 0]).unwrap();
        assert_eq!(cube_embedding_sign(&refl, &ElementaryCube::from_corner(&[0], &[0])).unwrap(), -1);
        let collapse = DigitalMap::constant(a.clone(), a, 0).unwrap();
        assert_eq!(cube_embedding_sign(&collapse, &ElementaryCube::from_corner(&[0], &[0])).unwrap(), 0);
    }

    fn cycle_order(x: &DigitalImage) -> Vec<usize> {
        let mut order = vec![0];
        let mut prev = usize::MAX;
        while order.len() < x.len() {
            let cur = *order.last().unwrap();
            let next = *x.neighbors(cur).iter().find(|&&w| w != prev && !order.contains(&w)).unwrap();
            prev = cur;
            order.push(next);
        }
        order
    }

    #[test]
    fn induced_examples() {
        let x = Arc::new(mss6());
        let id = DigitalMap::identity(x.clone());
        for q in 0..=2 {
            let m = induced_c1(&id, q).unwrap();
            assert_eq!(m.homology, IntMatrix::identity(m.source.rank()));
        }
        let c = Arc::new(embed_cycle(4).unwrap());
        let k = DigitalMap::constant(c.clone(), c.clone(), 0).unwrap();
        assert!(induced_c1(&k, 1).unwrap().chain.is_zero());

        let c6 = Arc::new(embed_cycle(6).unwrap());
        let order = cycle_order(&c6);
        let mut assignment = vec![0; 6];
        for (k, &p) in order.iter().enumerate() {
            assignment[p] = order[(k + 1) % 6];
        }
        let rot = DigitalMap::new(c6.clone(), c6.clone(), assignment).unwrap();
        assert!(rot.is_continuous());
        let h = induced_c1(&rot, 1).unwrap().homology;
        assert_eq!(h.shape(), (1, 1));
        let id6 = DigitalMap::identity(c6.clone());
        assert_eq!(h, induced_c1(&id6, 1).unwrap().homology);
        let k6 = CubicalComplex::new(&c6).unwrap();
        for q in 0..=1 {
            for cube in k6.cubes(q) {
                assert_prism_identity(&id6, &rot, cube);
            }
        }
    }

    fn assert_prism_identity(f: &DigitalMap, g: &DigitalMap, cube: &ElementaryCube) {
        let p = prism_c1(f, g, cube).unwrap();
        let single = CubicalChain::single(cube.clone());
        let mut rhs = single.push_forward(g).unwrap();
        rhs.add_chain(&single.push_forward(f).unwrap(), -1);
        for (s, face) in cube.boundary() {
            rhs.add_chain(&prism_c1(f, g, &face).unwrap(), -s);
        }
        assert_eq!(p.boundary(), rhs, "cube {cube}, f {f}, g {g}");
    }

    #[test]
    fn prism_examples() {
        let x = Arc::new(box_image(2, 2, 1).unwrap());
        let id = DigitalMap::identity(x.clone());
        let k = CubicalComplex::new(&x).unwrap();
        for q in 0..=2 {
            for c in k.cubes(q) {
                assert!(prism_c1(&id, &id, c).unwrap().is_zero());
            }
        }
        // a line translated sideways
        let line = Arc::new(DigitalImage::lattice(vec![[0, 0].into(), [1, 0].into()], 1).unwrap());
        let plane = Arc::new(DigitalImage::lattice(box_points(0, 1, 2), 1).unwrap());
        let f = DigitalMap::from_fn(line.clone(), plane.clone(), |i| plane.index_of(line.point(i)).unwrap()).unwrap();
        let g = DigitalMap::from_fn(line.clone(), plane.clone(), |i| {
            let p = line.point(i);
            plane.index_of(&Point(vec![p.0[0], 1])).unwrap()
        })
        .unwrap();
        let p = prism_c1(&f, &g, &ElementaryCube::from_corner(&[0, 0], &[])).unwrap();
        assert_eq!(p, CubicalChain::single(ElementaryCube::from_corner(&[0, 0], &[1])));
    }

    /// Random continuous map by randomized greedy assignment with restarts.
    pub(crate) fn random_continuous(x: &DigitalImage, y: &DigitalImage, rng: &mut ChaCha8Rng) -> Vec<usize> {
        'outer: loop {
            let mut a: Vec<usize> = Vec::with_capacity(x.len());
            for i in 0..x.len() {
                let cands: Vec<usize> = (0..y.len())
                    .filter(|&c| x.neighbors(i).iter().filter(|&&k| k < i).all(|&k| y.adjacent_or_equal(a[k], c)))
                    .collect();
                match cands.choose(rng) {
                    Some(&c) => a.push(c),
                    None => continue 'outer,
                }
            }
            return a;
        }
    }

    fn random_one_step(f: &[usize], x: &DigitalImage, y: &DigitalImage, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
        for _ in 0..50 {
            let mut g = Vec::with_capacity(f.len());
            let mut ok = true;
            for i in 0..f.len() {
                let mut cands: Vec<usize> = y.neighbors(f[i]).to_vec();
                cands.push(f[i]);
                cands.retain(|&c| x.neighbors(i).iter().filter(|&&k| k < i).all(|&k| y.adjacent_or_equal(g[k], c)));
                match cands.choose(rng) {
                    Some(&c) => g.push(c),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Some(g);
            }
        }
        None
    }

    #[test]
    fn prism_identity_on_grid_selfmaps() {
        let x = Arc::new(box_image(2, 2, 1).unwrap());
        let k = CubicalComplex::new(&x).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut tested = 0;
        while tested < 300 {
            let f = random_continuous(&x, &x, &mut rng);
            let Some(g) = random_one_step(&f, &x, &x, &mut rng) else { continue };
            let f = DigitalMap::new(x.clone(), x.clone(), f).unwrap();
            let g = DigitalMap::new(x.clone(), x.clone(), g).unwrap();
            for q in 0..=2 {
                for c in k.cubes(q) {
                    assert_prism_identity(&f, &g, c);
                }
            }
            tested += 1;
        }
    }

    #[test]
    fn chain_map_property_on_small_images() {
        let sq = Arc::new(embed_cycle(4).unwrap());
        for a in ContinuousMaps::new(&sq, &sq) {
            check_c1_chain_map(&DigitalMap::new(sq.clone(), sq.clone(), a).unwrap(), 2).unwrap();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let grid3 = box_points(0, 2, 3);
        for _ in 0..40 {
            let pick = |rng: &mut ChaCha8Rng| {
                let pts: Vec<Point> = grid3.iter().filter(|_| rng.gen_bool(0.7)).cloned().collect();
                Arc::new(DigitalImage::lattice(pts, 1).unwrap())
            };
            let (x, y) = (pick(&mut rng), pick(&mut rng));
            if x.is_empty() || y.is_empty() {
                continue;
            }
            for _ in 0..5 {
                let f = DigitalMap::new(x.clone(), y.clone(), random_continuous(&x, &y, &mut rng)).unwrap();
                check_c1_chain_map(&f, 3).unwrap();
            }
        }
    }

    #[test]
    fn homotopy_invariance_for_one_step_pairs() {
        let x = Arc::new(mss6());
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut tested = 0;
        while tested < 20 {
            let f = random_continuous(&x, &x, &mut rng);
            let Some(g) = random_one_step(&f, &x, &x, &mut rng) else { continue };
            let f = DigitalMap::new(x.clone(), x.clone(), f).unwrap();
            let g = DigitalMap::new(x.clone(), x.clone(), g).unwrap();
            for q in 0..=2 {
                assert_eq!(induced_c1(&f, q).unwrap().homology, induced_c1(&g, q).unwrap().homology);
            }
            tested += 1;
        }
    }

    #[test]
    fn star_shaped_images_are_acyclic() {
        let full = box_points(0, 2, 3);
        let centre = Point(vec![1, 1, 1]);
        let shapes: Vec<Vec<Point>> = vec![
            full.clone(),
            full.iter().filter(|p| p.0 != [0, 0, 0]).cloned().collect(),
            // the axis cross through the centre
            full.iter()
                .filter(|p| p.0.iter().zip(&centre.0).filter(|(a, b)| a != b).count() <= 1)
                .cloned()
                .collect(),
            // the three coordinate planes through the centre
            full.iter().filter(|p| p.0.contains(&1)).cloned().collect(),
        ];
        let expected = vec![
            HomologyGroup::free(1),
            HomologyGroup::trivial(),
            HomologyGroup::trivial(),
            HomologyGroup::trivial(),
        ];
        for pts in shapes {
            let x = DigitalImage::lattice(pts, 1).unwrap();
            assert_eq!(c1_homology(&x, Some(3)).unwrap(), expected);
        }
    }
}
