//! Exhaustive checks: the chain-map property of f̄_# on a single cube over
//! every normalized map I^q → [−q,q]^q, conjecture probes, and side-by-side
//! comparisons of the homology theories.
//!
//! A normalized map sends the origin to the origin and its first nonzero
//! value (in the lexicographic corner order) is (1,0,…,0). Raw counts keep
//! the origin fixed and drop the second filter.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cubical_c1::{classify_corner_image, CornerImage, CubicalChain, CubicalComplex};
use crate::error::{Error, Result};
use crate::image::{box_points, unit_cube, DigitalImage, Point};
use crate::maps::DigitalMap;
use crate::simplicial::SimplicialComplex;
use crate::theory::{homology, render_groups, Theory};
use crate::zmod::{smith_normal_form, HomologyGroup, InducedMap, IntMatrix};

pub const REPORT_FORMAT: &str = "dighom-report-v1";
const JOURNAL_HEADER: &str = "dighom-journal-v1";

/// Largest cube dimension the enumeration supports.
pub const MAX_CUBE_DIM: usize = 4;

/// Brute-force theories are attempted in comparison reports only on images
/// with at most this many points.
pub const BRUTE_FORCE_POINT_LIMIT: usize = 8;

/// Violations kept verbatim in a report; the count is always exact.
const VIOLATIONS_KEPT: usize = 100;

type Coord = [i64; MAX_CUBE_DIM];

/// Worker count from `DIGHOM_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("DIGHOM_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

struct CubeSearch {
    q: usize,
    normalized: bool,
    corners: usize,
    /// earlier[i]: corners below i adjacent to i (i with one bit cleared).
    earlier: Vec<Vec<usize>>,
}

impl CubeSearch {
    fn new(q: usize, normalized: bool) -> Self {
        let corners = 1 << q;
        let earlier = (0..corners)
            .map(|i| (0..q).filter(|b| i >> b & 1 == 1).map(|b| i & !(1 << b)).rev().collect())
            .collect();
        CubeSearch {
            q,
            normalized,
            corners,
            earlier,
        }
    }

    fn adjacent_or_equal(&self, a: &Coord, b: &Coord) -> bool {
        (0..self.q).map(|k| (a[k] - b[k]).abs()).sum::<i64>() <= 1
    }

    fn candidates(&self, assign: &[Coord]) -> Vec<Coord> {
        let i = assign.len();
        if i == 0 {
            return vec![[0; MAX_CUBE_DIM]];
        }
        let anchor = assign[self.earlier[i][0]];
        let bound = self.q as i64;
        let mut out = vec![anchor];
        for k in 0..self.q {
            for d in [-1, 1] {
                let mut c = anchor;
                c[k] += d;
                if c[k].abs() <= bound {
                    out.push(c);
                }
            }
        }
        out.retain(|c| self.earlier[i].iter().all(|&j| self.adjacent_or_equal(&assign[j], c)));
        if self.normalized && assign.iter().all(|c| *c == [0; MAX_CUBE_DIM]) {
            let mut e1 = [0; MAX_CUBE_DIM];
            e1[0] = 1;
            out.retain(|c| *c == [0; MAX_CUBE_DIM] || *c == e1);
        }
        out.sort_unstable();
        out
    }

    fn descend(&self, assign: &mut Vec<Coord>, visit: &mut impl FnMut(&[Coord])) {
        if assign.len() == self.corners {
            visit(assign);
            return;
        }
        for c in self.candidates(assign) {
            assign.push(c);
            self.descend(assign, visit);
            assign.pop();
        }
    }

    /// Every valid partial assignment of the first `depth` corners.
    fn prefixes(&self, depth: usize) -> Vec<Vec<Coord>> {
        let mut out = Vec::new();
        fn rec(s: &CubeSearch, depth: usize, cur: &mut Vec<Coord>, out: &mut Vec<Vec<Coord>>) {
            if cur.len() == depth {
                out.push(cur.clone());
                return;
            }
            for c in s.candidates(cur) {
                cur.push(c);
                rec(s, depth, cur, out);
                cur.pop();
            }
        }
        rec(self, depth, &mut Vec::new(), &mut out);
        out
    }

    /// Shards split the tree after the origin and two more corners.
    fn shard_depth(&self) -> usize {
        self.corners.min(3)
    }

    fn to_points(&self, assign: &[Coord]) -> Vec<Point> {
        assign.iter().map(|c| Point(c[..self.q].to_vec())).collect()
    }
}

fn check_dim(q: usize, long_running: bool) -> Result<()> {
    if q > MAX_CUBE_DIM {
        return Err(Error::Unsupported(format!(
            "cube maps are enumerated for q <= {MAX_CUBE_DIM}, got {q}"
        )));
    }
    if q == MAX_CUBE_DIM && !long_running {
        return Err(Error::Precondition(
            "q = 4 takes hours; pass the long-running flag to enable it".into(),
        ));
    }
    Ok(())
}

/// Calls `visit` with the corner values of every continuous map
/// I^q → [−q,q]^q passing the filters, in lexicographic order. Returns the count.
pub fn for_each_cube_map(q: usize, normalized: bool, mut visit: impl FnMut(&[Point])) -> Result<u64> {
    check_dim(q, true)?;
    let s = CubeSearch::new(q, normalized);
    let mut n = 0u64;
    s.descend(&mut Vec::new(), &mut |a| {
        n += 1;
        visit(&s.to_points(a));
    });
    Ok(n)
}

/// Streams the enumerated maps as [`DigitalMap`]s from (I^q, c₁) to
/// ([−q,q]^q, c₁).
pub fn enumerate_cube_maps(q: usize, normalized: bool, long_running: bool) -> Result<CubeMaps> {
    check_dim(q, long_running)?;
    let domain = Arc::new(if q == 0 {
        DigitalImage::lattice(vec![Point(vec![0])], 1)?
    } else {
        unit_cube(q)?
    });
    let side = q as i64;
    let codomain = Arc::new(if q == 0 {
        DigitalImage::lattice(vec![Point(vec![0])], 1)?
    } else {
        DigitalImage::lattice(box_points(-side, side, q), 1)?
    });
    Ok(CubeMaps {
        search: CubeSearch::new(q, normalized),
        domain,
        codomain,
        stack: Vec::new(),
        assign: Vec::new(),
        started: false,
    })
}

pub struct CubeMaps {
    search: CubeSearch,
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    stack: Vec<(Vec<Coord>, usize)>,
    assign: Vec<Coord>,
    started: bool,
}

impl CubeMaps {
    fn to_map(&self) -> DigitalMap {
        let q = self.search.q.max(1);
        let assignment = self
            .assign
            .iter()
            .map(|c| {
                self.codomain
                    .index_of(&Point(c[..q].to_vec()))
                    .expect("values stay in the box")
            })
            .collect();
        DigitalMap::new(self.domain.clone(), self.codomain.clone(), assignment).expect("valid map")
    }
}

impl Iterator for CubeMaps {
    type Item = DigitalMap;

    fn next(&mut self) -> Option<DigitalMap> {
        if !self.started {
            self.started = true;
            let c = self.search.candidates(&self.assign);
            self.stack.push((c, 0));
        }
        loop {
            let (cands, pos) = self.stack.last_mut()?;
            if *pos >= cands.len() {
                self.stack.pop();
                self.assign.pop();
                continue;
            }
            let v = cands[*pos];
            *pos += 1;
            self.assign.push(v);
            if self.assign.len() == self.search.corners {
                let out = self.to_map();
                self.assign.pop();
                return Some(out);
            }
            let c = self.search.candidates(&self.assign);
            self.stack.push((c, 0));
        }
    }
}

/// Outcome of checking f̄_#∂Q = ∂f̄_#Q on Q = I^q for one map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeCheck {
    pub holds: bool,
    /// f is a bijection onto an elementary cube but not affine on corners.
    pub non_affine_bijection: bool,
}

/// `values[b]` is the image of corner b of I^q (corner order as in
/// [`crate::cubical_c1::ElementaryCube::corners`]).
pub fn check_cube_map(q: usize, values: &[Point]) -> CubeCheck {
    let top = classify_corner_image(q, values);
    let non_affine_bijection = matches!(top, CornerImage::Incompatible { .. });
    let mut right = CubicalChain::zero();
    if let CornerImage::Embedding { sign, cube } = &top {
        for (s, face) in cube.boundary() {
            right.add(face, sign * s);
        }
    }
    let mut left = CubicalChain::zero();
    for k in 0..q {
        let sign: i64 = if (k + 1) % 2 == 0 { 1 } else { -1 };
        let bit = 1 << (q - 1 - k);
        for (side, coeff) in [(0, sign), (bit, -sign)] {
            let face: Vec<Point> = (0..values.len())
                .filter(|b| b & bit == side)
                .map(|b| values[b].clone())
                .collect();
            if let CornerImage::Embedding { sign: e, cube } = classify_corner_image(q - 1, &face) {
                left.add(cube, coeff * e);
            }
        }
    }
    CubeCheck {
        holds: left == right,
        non_affine_bijection,
    }
}

fn describe(values: &[Point]) -> String {
    let q = values.len().trailing_zeros() as usize;
    let parts: Vec<String> = values
        .iter()
        .enumerate()
        .map(|(b, v)| {
            let corner: Vec<String> = (0..q).map(|k| ((b >> (q - 1 - k)) & 1).to_string()).collect();
            format!("({})->{}", corner.join(","), v)
        })
        .collect();
    parts.join(" ")
}

#[derive(Clone, Debug, Default)]
pub struct EnumerationOptions {
    pub threads: Option<usize>,
    /// Completed shards are appended here and skipped on a rerun.
    pub journal: Option<PathBuf>,
    pub long_running: bool,
    /// Also count maps without the first-nonzero filter.
    pub count_raw: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub q: usize,
    pub normalized: bool,
    pub function_count: u64,
    pub raw_count: Option<u64>,
    pub violation_count: u64,
    /// The first violating maps, described corner by corner.
    pub violations: Vec<String>,
    pub non_affine_bijections: u64,
    pub shards: usize,
    pub resumed_shards: usize,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl EnumerationReport {
    pub fn confirmed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "{} functions, {} violations",
            self.function_count, self.violation_count
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("q={}: {}\n", self.q, self.summary());
        if let Some(r) = self.raw_count {
            let _ = writeln!(s, "raw count (origin fixed, no first-value filter): {r}");
        }
        let _ = writeln!(s, "non-affine bijections: {}", self.non_affine_bijections);
        for v in &self.violations {
            let _ = writeln!(s, "violation: {v}");
        }
        s
    }

    pub fn to_json(&self) -> Value {
        report_json("verify-chainmap", serde_json::to_value(self).expect("serializable"))
    }
}

#[derive(Default)]
struct ShardResult {
    count: u64,
    violation_count: u64,
    violations: Vec<String>,
    non_affine: u64,
}

impl ShardResult {
    fn merge(&mut self, other: ShardResult) {
        self.count += other.count;
        self.violation_count += other.violation_count;
        self.non_affine += other.non_affine;
        let room = VIOLATIONS_KEPT.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
    }
}

fn run_shard(s: &CubeSearch, prefix: &[Coord]) -> ShardResult {
    let mut r = ShardResult::default();
    let mut assign = prefix.to_vec();
    s.descend(&mut assign, &mut |a| {
        r.count += 1;
        let pts = s.to_points(a);
        let c = check_cube_map(s.q, &pts);
        if c.non_affine_bijection {
            r.non_affine += 1;
        }
        if !c.holds {
            r.violation_count += 1;
            if r.violations.len() < VIOLATIONS_KEPT {
                r.violations.push(describe(&pts));
            }
        }
    });
    r
}

struct Journal {
    file: Mutex<File>,
    done: BTreeMap<usize, ShardResult>,
}

impl Journal {
    fn header(q: usize, normalized: bool, shards: usize) -> String {
        format!("{JOURNAL_HEADER} q={q} normalized={normalized} shards={shards}")
    }

    fn open(path: &PathBuf, header: &str) -> Result<Journal> {
        let mut done = BTreeMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            let mut lines = reader.lines();
            match lines.next().transpose()? {
                Some(h) if h == header => {}
                Some(h) => {
                    return Err(Error::Format(format!(
                        "journal {} belongs to another run ({h})",
                        path.display()
                    )))
                }
                None => {}
            }
            for line in lines {
                let line = line?;
                let fields: Vec<&str> = line.splitn(3, ' ').collect();
                match fields.as_slice() {
                    ["shard", id, rest] => {
                        let nums: Vec<u64> = rest
                            .split(' ')
                            .map(|t| t.parse().map_err(|_| Error::Format(format!("bad journal line {line:?}"))))
                            .collect::<Result<_>>()?;
                        let [count, violation_count, non_affine] = nums[..] else {
                            return Err(Error::Format(format!("bad journal line {line:?}")));
                        };
                        let id: usize = id.parse().map_err(|_| Error::Format(format!("bad journal line {line:?}")))?;
                        let entry: &mut ShardResult = done.entry(id).or_default();
                        entry.count = count;
                        entry.violation_count = violation_count;
                        entry.non_affine = non_affine;
                    }
                    ["violation", id, text] => {
                        let id: usize = id.parse().map_err(|_| Error::Format(format!("bad journal line {line:?}")))?;
                        done.entry(id).or_default().violations.push(text.to_string());
                    }
                    _ => return Err(Error::Format(format!("bad journal line {line:?}"))),
                }
            }
            // violation lines precede their shard line; drop shards left unfinished
            done.retain(|_, r| r.count > 0);
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        if file.metadata()?.len() == 0 {
            writeln!(file, "{header}")?;
        }
        Ok(Journal {
            file: Mutex::new(file),
            done,
        })
    }

    fn record(&self, id: usize, r: &ShardResult) -> Result<()> {
        let mut f = self.file.lock().expect("journal lock");
        for v in &r.violations {
            writeln!(f, "violation {id} {v}")?;
        }
        writeln!(f, "shard {id} {} {} {}", r.count, r.violation_count, r.non_affine)?;
        f.flush()?;
        Ok(())
    }
}

/// Checks the chain-map property on every normalized map I^q → [−q,q]^q.
pub fn check_chainmap_theorem(q: usize, opts: &EnumerationOptions) -> Result<EnumerationReport> {
    check_dim(q, opts.long_running)?;
    let start = Instant::now();
    let s = CubeSearch::new(q, true);
    let shards = s.prefixes(s.shard_depth());
    let journal = match &opts.journal {
        Some(p) => Some(Journal::open(p, &Journal::header(q, true, shards.len()))?),
        None => None,
    };
    let pending: Vec<usize> = (0..shards.len())
        .filter(|id| journal.as_ref().is_none_or(|j| !j.done.contains_key(id)))
        .collect();
    let resumed = shards.len() - pending.len();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.or_else(threads_from_env).unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let results: Vec<(usize, ShardResult)> = pool.install(|| {
        pending
            .par_iter()
            .map(|&id| {
                let r = run_shard(&s, &shards[id]);
                if let Some(j) = &journal {
                    j.record(id, &r)?;
                }
                Ok((id, r))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut by_id: BTreeMap<usize, ShardResult> = results.into_iter().collect();
    if let Some(j) = journal {
        by_id.extend(j.done);
    }
    let mut total = ShardResult::default();
    for (_, r) in by_id {
        total.merge(r);
    }
    let raw_count = if opts.count_raw {
        let raw = CubeSearch::new(q, false);
        let raw_shards = raw.prefixes(raw.shard_depth());
        Some(pool.install(|| {
            raw_shards
                .par_iter()
                .map(|p| {
                    let mut n = 0u64;
                    raw.descend(&mut p.clone(), &mut |_| n += 1);
                    n
                })
                .sum()
        }))
    } else {
        None
    };
    Ok(EnumerationReport {
        q,
        normalized: true,
        function_count: total.count,
        raw_count,
        violation_count: total.violation_count,
        violations: total.violations,
        non_affine_bijections: total.non_affine,
        shards: shards.len(),
        resumed_shards: resumed,
        wall_time: start.elapsed(),
    })
}

/// Either a group or the reason it could not be computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Group(HomologyGroup),
    Unavailable(String),
}

impl Cell {
    pub fn group(&self) -> Option<&HomologyGroup> {
        match self {
            Cell::Group(g) => Some(g),
            Cell::Unavailable(_) => None,
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Group(g) => g.to_string(),
            Cell::Unavailable(_) => "-".into(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Group(g) => serde_json::to_value(g).expect("serializable"),
            Cell::Unavailable(why) => json!({ "unavailable": why }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CrossTheoryRow {
    pub q: usize,
    pub cells: Vec<(Theory, Cell)>,
}

impl CrossTheoryRow {
    /// Two available groups in this degree disagree.
    pub fn differs(&self) -> bool {
        let groups: HashSet<_> = self
            .cells
            .iter()
            .filter_map(|(_, c)| c.group())
            .map(|g| (g.betti, g.torsion.clone()))
            .collect();
        groups.len() > 1
    }
}

#[derive(Clone, Debug)]
pub struct CrossTheoryReport {
    pub qmax: usize,
    pub theories: Vec<Theory>,
    pub rows: Vec<CrossTheoryRow>,
    /// Per-theory reasons a theory was skipped or failed.
    pub notes: Vec<(Theory, String)>,
}

impl CrossTheoryReport {
    pub fn groups(&self, theory: Theory) -> Option<Vec<HomologyGroup>> {
        self.rows
            .iter()
            .map(|r| {
                r.cells
                    .iter()
                    .find(|(t, _)| *t == theory)
                    .and_then(|(_, c)| c.group().cloned())
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let head: Vec<String> = self.theories.iter().map(|t| format!("{:<12}", t.name())).collect();
        let _ = writeln!(s, "q   {}", head.join(" ").trim_end());
        for r in &self.rows {
            let cells: Vec<String> = r.cells.iter().map(|(_, c)| format!("{:<12}", c.text())).collect();
            let flag = if r.differs() { "  differs" } else { "" };
            let _ = writeln!(s, "{:<3} {}{}", r.q, cells.join(" ").trim_end(), flag);
        }
        for (t, why) in &self.notes {
            let _ = writeln!(s, "note: {t}: {why}");
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut cells = serde_json::Map::new();
                for (t, c) in &r.cells {
                    cells.insert(t.name().into(), c.to_json());
                }
                json!({ "q": r.q, "groups": cells, "differs": r.differs() })
            })
            .collect();
        let notes: Vec<Value> = self
            .notes
            .iter()
            .map(|(t, why)| json!({ "theory": t.name(), "note": why }))
            .collect();
        report_json("compare", json!({ "qmax": self.qmax, "rows": rows, "notes": notes }))
    }
}

/// H_q in every applicable theory for q ≤ qmax. Singular and cubical are
/// attempted only on images of at most [`BRUTE_FORCE_POINT_LIMIT`] points;
/// c1 only on c₁ lattice images. Failures become notes.
pub fn cross_theory_report(x: &DigitalImage, qmax: usize, cap: usize) -> CrossTheoryReport {
    let mut theories = Vec::new();
    let mut columns = Vec::new();
    let mut notes = Vec::new();
    for t in Theory::ALL {
        let skip = if t.is_brute_force() && x.len() > BRUTE_FORCE_POINT_LIMIT {
            Some(format!(
                "skipped: {} points exceeds the brute-force limit of {BRUTE_FORCE_POINT_LIMIT}",
                x.len()
            ))
        } else if t == Theory::C1 && !(x.is_c1() && x.dim() > 0) {
            Some("skipped: not a c1 lattice image".to_string())
        } else {
            None
        };
        let column: Vec<Cell> = match skip {
            Some(why) => {
                notes.push((t, why.clone()));
                vec![Cell::Unavailable(why); qmax + 1]
            }
            None => match homology(t, x, Some(qmax), cap) {
                Ok(gs) => gs.into_iter().map(Cell::Group).collect(),
                Err(e) => {
                    notes.push((t, e.to_string()));
                    vec![Cell::Unavailable(e.to_string()); qmax + 1]
                }
            },
        };
        theories.push(t);
        columns.push(column);
    }
    let rows = (0..=qmax)
        .map(|q| CrossTheoryRow {
            q,
            cells: theories.iter().copied().zip(columns.iter().map(|c| c[q].clone())).collect(),
        })
        .collect();
    CrossTheoryReport {
        qmax,
        theories,
        rows,
        notes,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureProbe {
    pub qmax: usize,
    pub cubical: Vec<HomologyGroup>,
    pub c1: Vec<HomologyGroup>,
    /// Degrees where the groups differ.
    pub mismatches: Vec<usize>,
}

impl ConjectureProbe {
    pub fn is_counterexample(&self) -> bool {
        !self.mismatches.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "cubical: {}\nc1:      {}\n",
            render_groups(&self.cubical),
            render_groups(&self.c1)
        );
        if self.is_counterexample() {
            let qs: Vec<String> = self.mismatches.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "COUNTEREXAMPLE: groups differ in degree {}", qs.join(","));
        } else {
            s.push_str("agree\n");
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v["counterexample"] = self.is_counterexample().into();
        report_json("probe-conjecture", v)
    }
}

/// Compares the cubical theory over maps of I^q with the elementary-cube
/// theory on a c₁ image.
pub fn probe_iso_conjecture(x: &DigitalImage, qmax: usize, cap: usize) -> Result<ConjectureProbe> {
    let c1 = homology(Theory::C1, x, Some(qmax), cap)?;
    let cubical = homology(Theory::Cubical, x, Some(qmax), cap)?;
    let mismatches = (0..=qmax).filter(|&q| cubical[q] != c1[q]).collect();
    Ok(ConjectureProbe {
        qmax,
        cubical,
        c1,
        mismatches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AgreementCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// H_0 is ℤ^components in the simplicial theory, the cubical theory over maps
/// (on images within the brute-force limit) and the c1 theory (on c₁ images).
pub fn check_dimension_zero(x: &DigitalImage, cap: usize) -> Result<AgreementCheck> {
    let expected = HomologyGroup::free(x.components().len());
    let mut seen = vec![("simplicial", homology(Theory::Simplicial, x, Some(0), cap)?[0].clone())];
    if x.len() <= BRUTE_FORCE_POINT_LIMIT {
        seen.push(("cubical", homology(Theory::Cubical, x, Some(0), cap)?[0].clone()));
    }
    if x.is_c1() && x.dim() > 0 {
        seen.push(("c1", homology(Theory::C1, x, Some(0), cap)?[0].clone()));
    }
    let passed = seen.iter().all(|(_, g)| *g == expected);
    let detail = seen
        .iter()
        .map(|(t, g)| format!("{t}={g}"))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(AgreementCheck {
        name: "H0 agreement".into(),
        passed,
        detail: format!("expected {expected}: {detail}"),
    })
}

/// Simplicial H_1 → c1 H_1 induced by reading each edge ⟨a,b⟩ (a < b) as
/// the elementary 1-cube {a,b}.
pub fn h1_comparison(x: &DigitalImage) -> Result<InducedMap> {
    let simp = SimplicialComplex::new(x, 2);
    let cubes = CubicalComplex::new(x)?;
    let mut chain = IntMatrix::zeros(cubes.count(1), simp.count(1));
    for (j, s) in simp.simplices(1).iter().enumerate() {
        let (a, b) = (x.point(s.vertices()[0]), x.point(s.vertices()[1]));
        let axis = (0..x.dim())
            .find(|&k| a.0[k] != b.0[k])
            .expect("distinct adjacent points");
        let cube = crate::cubical_c1::ElementaryCube::from_corner(&a.0, &[axis]);
        let i = cubes.index_of(&cube).expect("every c1 edge is an elementary 1-cube");
        chain.set(i, j, 1);
    }
    InducedMap::compute(1, chain, &simp.chain_complex(), &cubes.chain_complex(2))
}

/// Whether a homomorphism with matrix `m` onto a group with the given
/// orders (None = ℤ) is surjective.
fn is_surjective(m: &IntMatrix, target: &HomologyGroup) -> bool {
    let r = m.rows();
    let mut relations = IntMatrix::zeros(r, target.torsion.len());
    for (k, t) in target.torsion.iter().enumerate() {
        relations.set(target.betti + k, k, t.clone());
    }
    let d = smith_normal_form(&m.hstack(&relations));
    let f = d.invariant_factors();
    f.len() == r && f.iter().all(|x| x.is_one())
}

pub fn check_h1_surjection(x: &DigitalImage) -> Result<AgreementCheck> {
    let m = h1_comparison(x)?;
    let passed = m.source.rank() >= m.target.rank() && is_surjective(&m.homology, &m.target);
    Ok(AgreementCheck {
        name: "H1 surjection".into(),
        passed,
        detail: format!("H1={} onto H1(c1)={}", m.source, m.target),
    })
}

/// Wraps a payload as `{"format": "dighom-report-v1", "kind": kind, ...}`.
pub fn report_json(kind: &str, payload: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("format".into(), REPORT_FORMAT.into());
    out.insert("kind".into(), kind.into());
    match payload {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("data".into(), other);
        }
    }
    Value::Object(out)
}
