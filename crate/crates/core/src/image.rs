//! Digital images: finite point sets carrying a symmetric, antireflexive
//! adjacency relation.
//!
//! Points of a lattice image live in ℤⁿ and are kept in lexicographic order;
//! points of an abstract graph image carry no coordinates and keep their
//! insertion order. Every downstream orientation convention (simplex vertex
//! order, cube order, map enumeration order) is derived from this index order,
//! so images are immutable once built.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A point of ℤⁿ. Abstract graph images use the empty coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<i64>);

impl Point {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Point(coords.into())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(v: [i64; N]) -> Self {
        Point(v.to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// Standard c_k adjacency on ℤⁿ.
    Ck(usize),
    /// An explicit edge set.
    Explicit,
    /// The normal product NP_u of the listed factors.
    NormalProduct { u: usize, factors: Vec<DigitalImage> },
}

/// True iff `x` and `y` differ by exactly 1 in between 1 and `k` coordinates
/// and agree in all others.
pub fn ck_adjacent(x: &Point, y: &Point, k: usize) -> Result<bool> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidArgument("c_k adjacency needs k >= 1".into()));
    }
    Ok(ck_adjacent_coords(&x.0, &y.0, k))
}

pub(crate) fn ck_adjacent_coords(x: &[i64], y: &[i64], k: usize) -> bool {
    let mut differing = 0;
    for (a, b) in x.iter().zip(y) {
        match (a - b).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    differing >= 1 && differing <= k
}

/// A finite digital image.
#[derive(Clone, Debug)]
pub struct DigitalImage {
    dim: usize,
    points: Vec<Point>,
    adjacency: Adjacency,
    neighbors: Vec<Vec<usize>>,
    adj: Vec<bool>,
    lookup: HashMap<Point, usize>,
}

impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points == other.points && self.neighbors == other.neighbors
    }
}

impl Eq for DigitalImage {}

impl DigitalImage {
    fn assemble(
        dim: usize,
        points: Vec<Point>,
        adjacency: Adjacency,
        neighbors: Vec<Vec<usize>>,
    ) -> Self {
        let n = points.len();
        let mut adj = vec![false; n * n];
        for (i, ns) in neighbors.iter().enumerate() {
            for &j in ns {
                adj[i * n + j] = true;
            }
        }
        let lookup = if dim > 0 {
            points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
        } else {
            HashMap::new()
        };
        DigitalImage {
            dim,
            points,
            adjacency,
            neighbors,
            adj,
            lookup,
        }
    }

    fn sorted_lattice_points(points: Vec<Point>) -> Result<(usize, Vec<Point>, Vec<usize>)> {
        let dim = points.first().map_or(0, Point::dim);
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: p.dim(),
            });
        }
        // perm[new] = old
        let mut perm: Vec<usize> = (0..points.len()).collect();
        if dim > 0 {
            perm.sort_by(|&a, &b| points[a].cmp(&points[b]));
            for w in perm.windows(2) {
                if points[w[0]] == points[w[1]] {
                    return Err(Error::InvalidImage(format!(
                        "duplicate point {}",
                        points[w[0]]
                    )));
                }
            }
        }
        let sorted = perm.iter().map(|&i| points[i].clone()).collect();
        Ok((dim, sorted, perm))
    }

    /// Lattice image with c_k adjacency.
    pub fn lattice(points: Vec<Point>, k: usize) -> Result<Self> {
        let (dim, points, _) = Self::sorted_lattice_points(points)?;
        if k == 0 || (dim > 0 && k > dim) || (dim == 0 && !points.is_empty()) {
            return Err(Error::InvalidImage(format!(
                "c{k} adjacency is not defined in dimension {dim}"
            )));
        }
        let n = points.len();
        let mut neighbors = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if ck_adjacent_coords(&points[i].0, &points[j].0, k) {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
        Ok(Self::assemble(dim, points, Adjacency::Ck(k), neighbors))
    }

    /// Image with an explicit edge list. Points with coordinates are reordered
    /// lexicographically and edges remapped; coordinate-free points keep their
    /// insertion order.
    pub fn explicit(points: Vec<Point>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = points.len();
        let (dim, points, perm) = Self::sorted_lattice_points(points)?;
        let mut inverse = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidImage(format!(
                    "edge ({a},{b}) references a point outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidImage(format!("self-edge at point {a}")));
            }
            let (a, b) = (inverse[a], inverse[b]);
            if !neighbors[a].contains(&b) {
                neighbors[a].push(b);
                neighbors[b].push(a);
            }
        }
        for ns in &mut neighbors {
            ns.sort_unstable();
        }
        Ok(Self::assemble(dim, points, Adjacency::Explicit, neighbors))
    }

    /// Abstract graph image on `n` coordinate-free points.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::explicit(vec![Point(Vec::new()); n], edges)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    /// True for lattice images with c₁ adjacency.
    pub fn is_c1(&self) -> bool {
        self.dim > 0 && self.adjacency == Adjacency::Ck(1)
    }

    /// Neighbors of the point with index `i`, in increasing index order.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.points.len() + j]
    }

    pub fn adjacent_or_equal(&self, i: usize, j: usize) -> bool {
        i == j || self.adjacent(i, j)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    /// Neighbors of a point given by coordinates.
    pub fn neighbors_of(&self, p: &Point) -> Result<Vec<&Point>> {
        let i = self
            .index_of(p)
            .ok_or_else(|| Error::PointNotInImage(p.to_string()))?;
        Ok(self.neighbors[i].iter().map(|&j| &self.points[j]).collect())
    }

    /// Human-readable name for the point with index `i`.
    pub fn label(&self, i: usize) -> String {
        if self.dim == 0 {
            format!("c{i}")
        } else {
            self.points[i].to_string()
        }
    }

    /// Unordered edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Connected components, each sorted; blocks ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.neighbors[v] {
                    if !seen[w] {
                        seen[w] = true;
                        block.push(w);
                        queue.push_back(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// Two-colouring check; c₁ images are always bipartite.
    pub fn is_bipartite(&self) -> bool {
        let n = self.len();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].unwrap();
                for &w in &self.neighbors[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

/// The digital cycle C_n with points c₀,…,c_{n−1} and c_i ↔ c_{i+1 mod n}.
pub fn cycle_image(n: usize) -> Result<DigitalImage> {
    if n == 0 {
        return Err(Error::InvalidArgument("a cycle needs at least one point".into()));
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .map(|i| (i, (i + 1) % n))
        .filter(|(a, b)| a != b)
        .collect();
    DigitalImage::graph(n, &edges)
}

/// A subset of (ℤⁿ, c₁) isomorphic to C_m. Only even cycles embed, since
/// (ℤⁿ, c₁) is bipartite.
pub fn embed_cycle(m: usize) -> Result<DigitalImage> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "C_{m} does not embed in (Z^n, c1): only even cycles of length >= 2 do"
        )));
    }
    let points: Vec<Point> = match m {
        2 => vec![[0].into(), [1].into()],
        4 => vec![[0, 0].into(), [0, 1].into(), [1, 0].into(), [1, 1].into()],
        6 => vec![
            [0, 0, 0].into(),
            [1, 0, 0].into(),
            [1, 1, 0].into(),
            [1, 1, 1].into(),
            [0, 1, 1].into(),
            [0, 0, 1].into(),
        ],
        _ => {
            // rows y=0 and y=2 joined at both ends; m/2 - 1 points per row
            let last = (m / 2 - 2) as i64;
            let mut pts: Vec<Point> = (0..=last)
                .flat_map(|x| [Point::from([x, 0]), Point::from([x, 2])])
                .collect();
            pts.push([0, 1].into());
            pts.push([last, 1].into());
            pts
        }
    };
    DigitalImage::lattice(points, 1)
}

/// Normal product NP_u of the factors: tuples are adjacent iff their
/// coordinates are adjacent in at most `u` positions and equal elsewhere.
///
/// Product points are ordered lexicographically by factor index tuple. When
/// every factor is a lattice image the product coordinates are the
/// concatenated factor coordinates; otherwise they are the index tuples.
pub fn normal_product(factors: &[DigitalImage], u: usize) -> Result<DigitalImage> {
    if u == 0 || u > factors.len() {
        return Err(Error::InvalidArgument(format!(
            "NP_{u} needs 1 <= u <= {} factors",
            factors.len()
        )));
    }
    let lattice = factors.iter().all(|f| f.dim() > 0);
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for f in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..f.len()).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    let points: Vec<Point> = tuples
        .iter()
        .map(|t| {
            if lattice {
                Point(
                    t.iter()
                        .zip(factors)
                        .flat_map(|(&i, f)| f.point(i).0.iter().copied())
                        .collect(),
                )
            } else {
                Point(t.iter().map(|&i| i as i64).collect())
            }
        })
        .collect();
    let dim = points.first().map_or(0, Point::dim);
    let n = tuples.len();
    let mut neighbors = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            let mut moved = 0;
            let mut ok = true;
            for ((&x, &y), f) in tuples[a].iter().zip(&tuples[b]).zip(factors) {
                if x != y {
                    if f.adjacent(x, y) {
                        moved += 1;
                    } else {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && moved >= 1 && moved <= u {
                neighbors[a].push(b);
                neighbors[b].push(a);
            }
        }
    }
    Ok(DigitalImage::assemble(
        dim,
        points,
        Adjacency::NormalProduct {
            u,
            factors: factors.to_vec(),
        },
        neighbors,
    ))
}

/// All points of the box [lo, hi]ⁿ.
pub fn box_points(lo: i64, hi: i64, n: usize) -> Vec<Point> {
    let mut pts = vec![Vec::new()];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |c| {
                    let mut p = p.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    pts.into_iter().map(Point).collect()
}

/// [0, side]ⁿ with c_k adjacency.
pub fn box_image(side: i64, n: usize, k: usize) -> Result<DigitalImage> {
    DigitalImage::lattice(box_points(0, side, n), k)
}

/// The unit cube Iⁿ = [0,1]ⁿ with c₁ adjacency.
pub fn unit_cube(n: usize) -> Result<DigitalImage> {
    box_image(1, n, 1)
}

/// [0,2]³ with the centre removed, c₁ adjacency.
pub fn mss6() -> DigitalImage {
    let pts = box_points(0, 2, 3)
        .into_iter()
        .filter(|p| p.0 != [1, 1, 1])
        .collect();
    DigitalImage::lattice(pts, 1).expect("static image")
}

/// `k` pairwise non-adjacent abstract points.
pub fn isolated_points(k: usize) -> DigitalImage {
    DigitalImage::graph(k, &[]).expect("no edges")
}

/// The complete graph on `n` abstract points (the standard (n−1)-simplex).
pub fn complete_graph(n: usize) -> DigitalImage {
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    DigitalImage::graph(n, &edges).expect("valid edges")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(image: &DigitalImage, idx: &[usize]) -> Vec<Point> {
        idx.iter().map(|&i| image.point(i).clone()).collect()
    }

    #[test]
    fn ck_examples() {
        assert!(!ck_adjacent(&[0, 0].into(), &[1, 1].into(), 1).unwrap());
        assert!(ck_adjacent(&[0, 0].into(), &[1, 1].into(), 2).unwrap());
        assert!(!ck_adjacent(&[3, 5].into(), &[3, 5].into(), 2).unwrap());
        assert!(matches!(
            ck_adjacent(&[0].into(), &[0, 1].into(), 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ck_matches_metric_adjacency() {
        let pts = box_points(-1, 1, 3);
        for x in &pts {
            for y in &pts {
                let manhattan: i64 = x.0.iter().zip(&y.0).map(|(a, b)| (a - b).abs()).sum();
                let chebyshev = x.0.iter().zip(&y.0).map(|(a, b)| (a - b).abs()).max().unwrap();
                assert_eq!(ck_adjacent(x, y, 1).unwrap(), manhattan == 1);
                assert_eq!(ck_adjacent(x, y, 3).unwrap(), chebyshev == 1);
            }
        }
    }

    #[test]
    fn neighbor_examples() {
        let c5 = cycle_image(5).unwrap();
        assert_eq!(c5.neighbors(0), &[1, 4]);
        assert!(isolated_points(1).neighbors(0).is_empty());

        let sq = box_image(1, 2, 1).unwrap();
        let ns = sq.neighbors_of(&[0, 0].into()).unwrap();
        assert_eq!(ns, vec![&Point::from([0, 1]), &Point::from([1, 0])]);
        assert!(matches!(
            sq.neighbors_of(&[5, 5].into()),
            Err(Error::PointNotInImage(_))
        ));
    }

    #[test]
    fn component_examples() {
        assert_eq!(cycle_image(6).unwrap().components().len(), 1);
        assert_eq!(isolated_points(3).components().len(), 3);

        // C4 ⊔ C5 on nine abstract points
        let mut edges: Vec<_> = (0..4).map(|i| (i, (i + 1) % 4)).collect();
        edges.extend((0..5).map(|i| (4 + i, 4 + (i + 1) % 5)));
        let x = DigitalImage::graph(9, &edges).unwrap();
        let blocks = x.components();
        assert_eq!(blocks, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7, 8]]);
    }

    #[test]
    fn cycle_edge_counts() {
        let c4 = cycle_image(4).unwrap();
        assert_eq!((c4.len(), c4.edge_count()), (4, 4));
        let c2 = cycle_image(2).unwrap();
        assert_eq!((c2.len(), c2.edge_count()), (2, 1));
        let c1 = cycle_image(1).unwrap();
        assert_eq!((c1.len(), c1.edge_count()), (1, 0));
        assert!(cycle_image(0).is_err());
    }

    #[test]
    fn embed_cycle_lists() {
        let e6 = embed_cycle(6).unwrap();
        let mut expected: Vec<Point> = vec![
            [0, 0, 0].into(),
            [1, 0, 0].into(),
            [1, 1, 0].into(),
            [1, 1, 1].into(),
            [0, 1, 1].into(),
            [0, 0, 1].into(),
        ];
        expected.sort();
        assert_eq!(e6.points(), expected.as_slice());

        let e4 = embed_cycle(4).unwrap();
        assert_eq!(
            e4.points(),
            &[[0, 0].into(), [0, 1].into(), [1, 0].into(), [1, 1].into()]
        );

        let e8 = embed_cycle(8).unwrap();
        assert_eq!(e8.len(), 8);
        assert!((0..8).all(|i| e8.neighbors(i).len() == 2));

        assert!(embed_cycle(5).is_err());
        assert!(embed_cycle(0).is_err());
    }

    /// Walks the unique 2-regular connected structure and checks it closes up
    /// after exactly `len` steps.
    fn is_single_cycle(x: &DigitalImage) -> bool {
        if x.len() < 3 || (0..x.len()).any(|i| x.neighbors(i).len() != 2) {
            return false;
        }
        let (mut prev, mut cur, mut steps) = (0, x.neighbors(0)[0], 1);
        while cur != 0 {
            let next = *x.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
            prev = cur;
            cur = next;
            steps += 1;
        }
        steps == x.len()
    }

    #[test]
    fn embedded_cycles_are_cycles() {
        for m in (4..=16).step_by(2) {
            let e = embed_cycle(m).unwrap();
            let c = cycle_image(m).unwrap();
            assert_eq!(e.len(), c.len());
            assert_eq!(e.edge_count(), c.edge_count());
            assert!(is_single_cycle(&e), "embed_cycle({m})");
            assert!(is_single_cycle(&c));
            assert!(e.is_bipartite());
        }
        assert_eq!(embed_cycle(2).unwrap().edge_count(), 1);
    }

    #[test]
    fn normal_product_examples() {
        let i = box_image(1, 1, 1).unwrap();
        let np1 = normal_product(&[i.clone(), i.clone()], 1).unwrap();
        assert_eq!(np1.edge_count(), 4);
        assert!(is_single_cycle(&np1));
        assert_eq!(np1, box_image(1, 2, 1).unwrap());

        let np2 = normal_product(&[i.clone(), i.clone()], 2).unwrap();
        assert_eq!(np2.edge_count(), 6);
        assert_eq!(np2, box_image(1, 2, 2).unwrap());

        let c5 = cycle_image(5).unwrap();
        let single = isolated_points(1);
        let prod = normal_product(&[c5.clone(), single], 1).unwrap();
        assert_eq!(prod.len(), 5);
        assert_eq!(prod.edges().collect::<Vec<_>>(), c5.edges().collect::<Vec<_>>());

        assert!(normal_product(&[i.clone(), i], 3).is_err());
    }

    #[test]
    fn explicit_rejects_bad_edges() {
        assert!(DigitalImage::graph(3, &[(0, 3)]).is_err());
        assert!(DigitalImage::graph(3, &[(1, 1)]).is_err());
        assert!(DigitalImage::explicit(vec![[0].into(), [0].into()], &[]).is_err());
    }

    #[test]
    fn explicit_lattice_points_are_sorted_and_edges_remapped() {
        let x = DigitalImage::explicit(
            vec![[2, 0].into(), [0, 0].into(), [1, 0].into()],
            &[(0, 2), (2, 1)],
        )
        .unwrap();
        assert_eq!(pts(&x, &[0, 1, 2]), vec![[0, 0].into(), [1, 0].into(), [2, 0].into()]);
        assert_eq!(x.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn c1_images_are_bipartite() {
        assert!(mss6().is_bipartite());
        assert!(unit_cube(3).unwrap().is_bipartite());
        assert!(!cycle_image(5).unwrap().is_bipartite());
        assert_eq!(mss6().len(), 26);
        assert_eq!(mss6().edge_count(), 48);
    }

    #[test]
    fn adjacency_is_symmetric_and_antireflexive() {
        for x in [mss6(), box_image(2, 2, 2).unwrap(), cycle_image(7).unwrap()] {
            for i in 0..x.len() {
                assert!(!x.adjacent(i, i));
                for j in 0..x.len() {
                    assert_eq!(x.adjacent(i, j), x.adjacent(j, i));
                }
            }
        }
    }
}
