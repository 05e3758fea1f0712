//! Exact linear algebra over ℤ.
//!
//! Everything runs on arbitrary-precision integers. The Smith reduction picks
//! the entry of smallest nonzero absolute value (ties broken by row-major
//! position) as its pivot, so results are deterministic for a fixed input.
//!
//! Homology of a slice `C_{q+1} → C_q → C_{q-1}` is computed in two Smith
//! reductions: one of ∂_q gives a basis of the cycles Z_q, the second reduces
//! ∂_{q+1} written in cycle coordinates. The combined change of basis lets any
//! cycle be read off in homology coordinates, which is what induced maps need.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of small integers. All rows must have equal
    /// length; `cols` disambiguates the empty case.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.data[i * self.cols + j] = value.into();
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.data[i * self.cols + j] += value.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            self.data.swap(a * c + j, b * c + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            self.data.swap(i * c + a, i * c + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        debug_assert_ne!(dst, src);
        let c = self.cols;
        let (s, d) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * c);
            (&lo[src * c..src * c + c], &mut hi[..c])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * c);
            (&hi[..c], &mut lo[dst * c..dst * c + c])
        };
        for (x, y) in d.iter_mut().zip(s) {
            if !y.is_zero() {
                *x += factor * y;
            }
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        debug_assert_ne!(dst, src);
        let c = self.cols;
        for i in 0..self.rows {
            let y = &self.data[i * c + src];
            if !y.is_zero() {
                let v = factor * y;
                self.data[i * c + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        let c = self.cols;
        for x in &mut self.data[r * c..(r + 1) * c] {
            *x = -std::mem::take(x);
        }
    }

    fn negate_col(&mut self, col: usize) {
        let c = self.cols;
        for i in 0..self.rows {
            let x = &mut self.data[i * c + col];
            *x = -std::mem::take(x);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.get(i, j)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// U·M·V = D with U, V unimodular and D diagonal in Smith form.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

#[derive(Clone, Copy, Default)]
struct Track {
    u: bool,
    u_inv: bool,
    v: bool,
    v_inv: bool,
}

struct Reduction {
    d: IntMatrix,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
    rank: usize,
}

impl Reduction {
    fn factor(&self, i: usize) -> &BigInt {
        self.d.get(i, i)
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(a, b);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(a, b);
        }
    }

    fn row_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_row_multiple(dst, src, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, c);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &-c);
        }
    }

    fn col_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_col_multiple(dst, src, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, c);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row_multiple(src, dst, &-c);
        }
    }

    fn row_negate(&mut self, r: usize) {
        self.d.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(r);
        }
    }

    /// Smallest nonzero |entry| in the trailing block starting at (t, t).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let m = &self.d;
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                let x = m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.magnitude() < m.get(bi, bj).magnitude(),
                };
                if better {
                    best = Some((i, j));
                    if x.magnitude().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Clears row t and column t using the pivot at (t, t). Returns false when
    /// a nonzero remainder is left behind.
    fn eliminate(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.d.rows {
            if self.d.get(i, t).is_zero() {
                continue;
            }
            let q = self.d.get(i, t) / self.factor(t);
            if !q.is_zero() {
                self.row_add(i, t, &-q);
            }
            clean &= self.d.get(i, t).is_zero();
        }
        for j in t + 1..self.d.cols {
            if self.d.get(t, j).is_zero() {
                continue;
            }
            let q = self.d.get(t, j) / self.factor(t);
            if !q.is_zero() {
                self.col_add(j, t, &-q);
            }
            clean &= self.d.get(t, j).is_zero();
        }
        clean
    }

    fn indivisible_row(&self, t: usize) -> Option<usize> {
        let p = self.factor(t);
        if p.magnitude().is_one() {
            return None;
        }
        (t + 1..self.d.rows).find(|&i| {
            (t + 1..self.d.cols).any(|j| {
                let x = self.d.get(i, j);
                !x.is_zero() && !x.is_multiple_of(p)
            })
        })
    }

    fn run(m: IntMatrix, track: Track) -> Reduction {
        let (rows, cols) = m.shape();
        let mut r = Reduction {
            d: m,
            u: track.u.then(|| IntMatrix::identity(rows)),
            u_inv: track.u_inv.then(|| IntMatrix::identity(rows)),
            v: track.v.then(|| IntMatrix::identity(cols)),
            v_inv: track.v_inv.then(|| IntMatrix::identity(cols)),
            rank: 0,
        };
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = r.pivot(t) else { break };
            r.row_swap(t, pi);
            r.col_swap(t, pj);
            if !r.eliminate(t) {
                continue;
            }
            if let Some(i) = r.indivisible_row(t) {
                r.row_add(t, i, &BigInt::one());
                continue;
            }
            if r.factor(t).is_negative() {
                r.row_negate(t);
            }
            t += 1;
        }
        r.rank = t;
        r
    }
}

/// Smith normal form with both transforms and their inverses.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let r = Reduction::run(
        m.clone(),
        Track {
            u: true,
            u_inv: true,
            v: true,
            v_inv: true,
        },
    );
    SmithDecomposition {
        d: r.d,
        u: r.u.unwrap(),
        v: r.v.unwrap(),
        u_inv: r.u_inv.unwrap(),
        v_inv: r.v_inv.unwrap(),
    }
}

/// Solves M·x = v over ℤ, if possible.
pub fn in_column_lattice(m: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows, v.len(), "vector length must equal the row count");
    let r = Reduction::run(
        m.clone(),
        Track {
            u: true,
            v: true,
            ..Track::default()
        },
    );
    let w = r.u.as_ref().unwrap().mul_vec(v);
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, wi) in w.iter().enumerate() {
        if i < r.rank {
            let (q, rem) = wi.div_rem(r.factor(i));
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !wi.is_zero() {
            return None;
        }
    }
    Some(r.v.as_ref().unwrap().mul_vec(&y))
}

/// A finitely generated abelian group ℤ^betti ⊕ ⊕ ℤ/tᵢ together with cycle
/// representatives of its generators (free ones first, then torsion).
///
/// Equality compares only the isomorphism type.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    pub generators: Vec<Vec<BigInt>>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
            generators: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn with_torsion(betti: usize, torsion: &[u64]) -> Self {
        HomologyGroup {
            betti,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
            generators: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Number of generators, free plus torsion.
    pub fn rank(&self) -> usize {
        self.betti + self.torsion.len()
    }
}

impl PartialEq for HomologyGroup {
    fn eq(&self, other: &Self) -> bool {
        self.betti == other.betti && self.torsion == other.torsion
    }
}

impl Eq for HomologyGroup {}

/// Serialized as `{"betti", "torsion", "text"}`; torsion orders are numbers
/// when they fit in a u64 and decimal strings otherwise.
impl Serialize for HomologyGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|t| match u64::try_from(t) {
                Ok(v) => v.into(),
                Err(_) => t.to_string().into(),
            })
            .collect();
        let mut st = s.serialize_struct("HomologyGroup", 3)?;
        st.serialize_field("betti", &self.betti)?;
        st.serialize_field("torsion", &torsion)?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Consecutive boundary maps ∂_q : C_q → C_{q-1} and ∂_{q+1} : C_{q+1} → C_q.
#[derive(Clone, Debug)]
pub struct ChainComplexSlice {
    pub boundary_q: IntMatrix,
    pub boundary_q_plus_1: IntMatrix,
}

impl ChainComplexSlice {
    pub fn new(boundary_q: IntMatrix, boundary_q_plus_1: IntMatrix) -> Self {
        ChainComplexSlice {
            boundary_q,
            boundary_q_plus_1,
        }
    }

    pub fn chain_rank(&self) -> usize {
        self.boundary_q.cols
    }
}

/// Homology of one slice with the change of basis needed to express cycles in
/// homology coordinates.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    group: HomologyGroup,
    boundary_q: IntMatrix,
    boundary_q_plus_1: IntMatrix,
    /// Columns span Z_q.
    cycles: IntMatrix,
    /// Maps a q-chain to its homology coordinates (before torsion reduction).
    coordinates: IntMatrix,
    /// None for a free coordinate, Some(d) for a ℤ/d coordinate.
    orders: Vec<Option<BigInt>>,
}

impl HomologyBasis {
    pub fn new(slice: &ChainComplexSlice) -> Result<Self> {
        let (dq, dq1) = (&slice.boundary_q, &slice.boundary_q_plus_1);
        if dq.cols != dq1.rows {
            return Err(Error::InvalidArgument(format!(
                "boundary shapes do not compose: {}x{} after {}x{}",
                dq.rows, dq.cols, dq1.rows, dq1.cols
            )));
        }
        if !dq.mul(dq1).is_zero() {
            return Err(Error::NotAChainComplex);
        }
        let n = dq.cols;
        let first = Reduction::run(
            dq.clone(),
            Track {
                v: true,
                v_inv: true,
                ..Track::default()
            },
        );
        let r = first.rank;
        let kernel_cols: Vec<usize> = (r..n).collect();
        let v = first.v.unwrap();
        let v_inv = first.v_inv.unwrap();
        let cycles = v.select_cols(&kernel_cols);
        let to_cycle_coords = v_inv.select_rows(&kernel_cols);

        // boundaries in cycle coordinates; the first r rows of V⁻¹∂ vanish
        let b = to_cycle_coords.mul(dq1);
        let second = Reduction::run(
            b,
            Track {
                u: true,
                u_inv: true,
                ..Track::default()
            },
        );
        let k = kernel_cols.len();
        let s = second.rank;
        let u2 = second.u.as_ref().unwrap();
        let u2_inv = second.u_inv.as_ref().unwrap();

        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in s..k {
            keep.push(i);
            orders.push(None);
        }
        let mut torsion = Vec::new();
        for i in 0..s {
            let d = second.factor(i);
            if !d.is_one() {
                keep.push(i);
                orders.push(Some(d.clone()));
                torsion.push(d.clone());
            }
        }
        let coordinates = u2.select_rows(&keep).mul(&to_cycle_coords);
        let gens = cycles.mul(&u2_inv.select_cols(&keep));
        let generators = (0..gens.cols).map(|j| gens.column(j)).collect();
        Ok(HomologyBasis {
            group: HomologyGroup {
                betti: k - s,
                torsion,
                generators,
            },
            boundary_q: dq.clone(),
            boundary_q_plus_1: dq1.clone(),
            cycles,
            coordinates,
            orders,
        })
    }

    pub fn group(&self) -> &HomologyGroup {
        &self.group
    }

    pub fn into_group(self) -> HomologyGroup {
        self.group
    }

    pub fn chain_rank(&self) -> usize {
        self.boundary_q.cols
    }

    pub fn cycle_basis(&self) -> &IntMatrix {
        &self.cycles
    }

    pub fn is_cycle(&self, chain: &[BigInt]) -> bool {
        self.boundary_q.mul_vec(chain).iter().all(Zero::is_zero)
    }

    /// Homology coordinates of a cycle; torsion coordinates reduced into [0, d).
    pub fn coordinates(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let raw = self.coordinates.mul_vec(cycle);
        raw.into_iter()
            .zip(&self.orders)
            .map(|(x, o)| match o {
                Some(d) => x.mod_floor(d),
                None => x,
            })
            .collect()
    }

    pub fn is_boundary(&self, cycle: &[BigInt]) -> bool {
        self.is_cycle(cycle) && self.coordinates(cycle).iter().all(Zero::is_zero)
    }

    /// Matrix of the homomorphism induced by `chain_map` (target chains ×
    /// source chains) from this group to `target`.
    pub fn induced(&self, target: &HomologyBasis, chain_map: &IntMatrix) -> Result<IntMatrix> {
        if chain_map.shape() != (target.chain_rank(), self.chain_rank()) {
            return Err(Error::InvalidArgument(format!(
                "chain map is {}x{}, expected {}x{}",
                chain_map.rows,
                chain_map.cols,
                target.chain_rank(),
                self.chain_rank()
            )));
        }
        for j in 0..self.cycles.cols {
            let z = self.cycles.column(j);
            if !target.is_cycle(&chain_map.mul_vec(&z)) {
                return Err(Error::ChainMapViolation {
                    witness: format!("cycle {}", fmt_vec(&z)),
                });
            }
        }
        for j in 0..self.boundary_q_plus_1.cols {
            let b = self.boundary_q_plus_1.column(j);
            if !target.is_boundary(&chain_map.mul_vec(&b)) {
                return Err(Error::ChainMapViolation {
                    witness: format!("boundary {}", fmt_vec(&b)),
                });
            }
        }
        let mut out = IntMatrix::zeros(target.group.rank(), self.group.rank());
        for (j, g) in self.group.generators.iter().enumerate() {
            for (i, c) in target.coordinates(&chain_map.mul_vec(g)).into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn homology_of_pair(boundary_q: &IntMatrix, boundary_q_plus_1: &IntMatrix) -> Result<HomologyGroup> {
    HomologyBasis::new(&ChainComplexSlice::new(boundary_q.clone(), boundary_q_plus_1.clone()))
        .map(HomologyBasis::into_group)
}

/// Matrix of f_* on H_q, in the canonical generators of source and target.
pub fn induced_on_homology(
    chain_map_q: &IntMatrix,
    source: &ChainComplexSlice,
    target: &ChainComplexSlice,
) -> Result<IntMatrix> {
    let s = HomologyBasis::new(source)?;
    let t = HomologyBasis::new(target)?;
    s.induced(&t, chain_map_q)
}

/// Boundary matrices ∂_0, …, ∂_top of a truncated chain complex; ∂_0 is the
/// zero map C_0 → 0. H_q is available for q < top.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(boundaries: Vec<IntMatrix>) -> Result<Self> {
        if let Some(d0) = boundaries.first() {
            if d0.rows != 0 {
                return Err(Error::InvalidArgument("the degree-0 boundary must have no rows".into()));
            }
        }
        for (q, w) in boundaries.windows(2).enumerate() {
            if w[0].cols != w[1].rows {
                return Err(Error::InvalidArgument(format!(
                    "boundary {} has {} columns but boundary {} has {} rows",
                    q,
                    w[0].cols,
                    q + 1,
                    w[1].rows
                )));
            }
        }
        Ok(ChainComplex { boundaries })
    }

    /// Highest degree with a boundary matrix.
    pub fn top(&self) -> Option<usize> {
        self.boundaries.len().checked_sub(1)
    }

    pub fn rank(&self, q: usize) -> usize {
        self.boundaries.get(q).map_or(0, |b| b.cols)
    }

    pub fn boundary(&self, q: usize) -> &IntMatrix {
        &self.boundaries[q]
    }

    pub fn is_chain_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    pub fn slice(&self, q: usize) -> Result<ChainComplexSlice> {
        if q + 1 >= self.boundaries.len() {
            return Err(Error::InvalidArgument(format!(
                "degree {q} needs boundaries through {} but the complex stops at {}",
                q + 1,
                self.boundaries.len() as isize - 1
            )));
        }
        Ok(ChainComplexSlice::new(
            self.boundaries[q].clone(),
            self.boundaries[q + 1].clone(),
        ))
    }

    pub fn basis(&self, q: usize) -> Result<HomologyBasis> {
        HomologyBasis::new(&self.slice(q)?)
    }

    pub fn homology(&self, q: usize) -> Result<HomologyGroup> {
        self.basis(q).map(HomologyBasis::into_group)
    }

    /// H_0, …, H_{top-1}.
    pub fn homology_groups(&self) -> Result<Vec<HomologyGroup>> {
        (0..self.boundaries.len().saturating_sub(1))
            .map(|q| self.homology(q))
            .collect()
    }
}

/// Checks f_{q-1} ∂_q = ∂_q f_q for every q where both sides are defined.
/// `maps[q]` is the degree-q chain matrix.
pub fn check_chain_map(source: &ChainComplex, target: &ChainComplex, maps: &[IntMatrix]) -> Result<()> {
    for q in 1..maps.len() {
        if q >= source.boundaries.len() || q >= target.boundaries.len() {
            break;
        }
        let left = maps[q - 1].mul(source.boundary(q));
        let right = target.boundary(q).mul(&maps[q]);
        if left != right {
            let col = (0..left.cols)
                .find(|&j| left.column(j) != right.column(j))
                .unwrap_or(0);
            return Err(Error::ChainMapViolation {
                witness: format!("degree {q}, generator {col}"),
            });
        }
    }
    Ok(())
}

/// A chain map in one degree together with the homomorphism it induces.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub degree: usize,
    pub chain: IntMatrix,
    pub homology: IntMatrix,
    pub source: HomologyGroup,
    pub target: HomologyGroup,
}

impl InducedMap {
    pub fn compute(degree: usize, chain: IntMatrix, source: &ChainComplex, target: &ChainComplex) -> Result<Self> {
        let s = source.basis(degree)?;
        let t = target.basis(degree)?;
        let homology = s.induced(&t, &chain)?;
        Ok(InducedMap {
            degree,
            chain,
            homology,
            source: s.into_group(),
            target: t.into_group(),
        })
    }
}

pub fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
