//! Continuous maps between digital images and the homotopy relations on them.
//!
//! Homotopy (and strong homotopy) is generated by one-step moves, so homotopy
//! classes are the connected components of the graph whose vertices are the
//! continuous maps X → Y and whose edges are one-step (strong one-step)
//! pairs. Components are found by breadth-first search; neighbours of a map
//! are generated on demand instead of materialising the edge set.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::DigitalImage;

/// Default bound on the number of maps an enumeration may produce.
pub const DEFAULT_MAP_CAP: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct DigitalMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    assignment: Vec<usize>,
}

impl PartialEq for DigitalMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment && self.same_spaces(other)
    }
}

impl Eq for DigitalMap {}

impl DigitalMap {
    /// `assignment[i]` is the codomain index of the image of domain point `i`.
    pub fn new(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != domain.len() {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} entries for a domain of {} points",
                assignment.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::InvalidArgument(format!(
                "codomain index {bad} out of range 0..{}",
                codomain.len()
            )));
        }
        Ok(DigitalMap {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn from_fn(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let assignment = (0..domain.len()).map(f).collect();
        Self::new(domain, codomain, assignment)
    }

    pub fn identity(image: Arc<DigitalImage>) -> Self {
        let assignment = (0..image.len()).collect();
        DigitalMap {
            domain: image.clone(),
            codomain: image,
            assignment,
        }
    }

    pub fn constant(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, value: usize) -> Result<Self> {
        let n = domain.len();
        Self::new(domain, codomain, vec![value; n])
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, i: usize) -> usize {
        self.assignment[i]
    }

    /// Number of distinct image points.
    pub fn image_size(&self) -> usize {
        self.assignment.iter().collect::<HashSet<_>>().len()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DigitalMap) -> Result<DigitalMap> {
        if !same_image(&self.codomain, &other.domain) {
            return Err(Error::DomainMismatch);
        }
        Ok(DigitalMap {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            assignment: self.assignment.iter().map(|&j| other.assignment[j]).collect(),
        })
    }

    pub fn same_spaces(&self, other: &DigitalMap) -> bool {
        same_image(&self.domain, &other.domain) && same_image(&self.codomain, &other.codomain)
    }

    /// Adjacent points go to adjacent-or-equal points.
    pub fn is_continuous(&self) -> bool {
        self.domain
            .edges()
            .all(|(a, b)| self.codomain.adjacent_or_equal(self.assignment[a], self.assignment[b]))
    }
}

impl fmt::Display for DigitalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", self.domain.label(i), self.codomain.label(j)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn same_image(a: &Arc<DigitalImage>, b: &Arc<DigitalImage>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_pair(f: &DigitalMap, g: &DigitalMap) -> Result<()> {
    if f.same_spaces(g) {
        Ok(())
    } else {
        Err(Error::DomainMismatch)
    }
}

/// f(x) ↔= g(x) for every x.
pub fn one_step_homotopic(f: &DigitalMap, g: &DigitalMap) -> Result<bool> {
    check_pair(f, g)?;
    let y = &f.codomain;
    Ok(f.assignment
        .iter()
        .zip(&g.assignment)
        .all(|(&a, &b)| y.adjacent_or_equal(a, b)))
}

/// One-step homotopic, and f(x) ↔= g(x′) whenever x ↔ x′.
pub fn one_step_strong(f: &DigitalMap, g: &DigitalMap) -> Result<bool> {
    if !one_step_homotopic(f, g)? {
        return Ok(false);
    }
    let y = &f.codomain;
    Ok(f.domain.edges().all(|(a, b)| {
        y.adjacent_or_equal(f.assignment[a], g.assignment[b])
            && y.adjacent_or_equal(f.assignment[b], g.assignment[a])
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Ordinary,
    Strong,
}

impl Relation {
    pub fn one_step(self, f: &DigitalMap, g: &DigitalMap) -> Result<bool> {
        match self {
            Relation::Ordinary => one_step_homotopic(f, g),
            Relation::Strong => one_step_strong(f, g),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ordinary => "ordinary",
            Relation::Strong => "strong",
        })
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinary" => Ok(Relation::Ordinary),
            "strong" => Ok(Relation::Strong),
            _ => Err(Error::InvalidArgument(format!("unknown relation {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Ordinary,
    Strong,
    Punctuated,
}

/// A homotopy H : X × [0,k] → Y stored stage by stage: H(x, t) = stages[t](x).
#[derive(Clone, Debug)]
pub struct HomotopyTrace {
    pub stages: Vec<DigitalMap>,
    pub flavor: Flavor,
}

impl HomotopyTrace {
    /// Consecutive stages differ at no more than one point.
    pub fn is_punctuated(&self) -> bool {
        self.stages.windows(2).all(|w| {
            w[0].assignment
                .iter()
                .zip(&w[1].assignment)
                .filter(|(a, b)| a != b)
                .count()
                <= 1
        })
    }
}

/// Whether the trace is continuous on X × [0,k] with the NP₁ product
/// adjacency (NP₂ when `strong`).
pub fn is_homotopy(trace: &HomotopyTrace, strong: bool) -> Result<bool> {
    let Some(first) = trace.stages.first() else {
        return Err(Error::InvalidArgument("empty homotopy trace".into()));
    };
    for s in &trace.stages {
        check_pair(first, s)?;
        if !s.is_continuous() {
            return Ok(false);
        }
    }
    for w in trace.stages.windows(2) {
        let ok = if strong {
            one_step_strong(&w[0], &w[1])?
        } else {
            one_step_homotopic(&w[0], &w[1])?
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Punctuated homotopy from f to g (strongly homotopic in one step), switching
/// one point per stage in the domain's point order.
pub fn punctuate(f: &DigitalMap, g: &DigitalMap) -> Result<HomotopyTrace> {
    if !f.is_continuous() || !g.is_continuous() {
        return Err(Error::Precondition("punctuate needs continuous maps".into()));
    }
    if !one_step_strong(f, g)? {
        return Err(Error::Precondition(
            "maps are not strongly homotopic in one step, so no punctuated homotopy is built".into(),
        ));
    }
    let n = f.domain.len();
    let stages = (0..=n)
        .map(|t| DigitalMap {
            domain: f.domain.clone(),
            codomain: f.codomain.clone(),
            assignment: (0..n)
                .map(|i| if i >= t { f.assignment[i] } else { g.assignment[i] })
                .collect(),
        })
        .collect();
    Ok(HomotopyTrace {
        stages,
        flavor: Flavor::Punctuated,
    })
}

/// Lazily enumerates every continuous map X → Y as an assignment vector, in
/// lexicographic order, by backtracking over X's point order.
pub struct ContinuousMaps<'a> {
    x: &'a DigitalImage,
    y: &'a DigitalImage,
    stack: Vec<(Vec<usize>, usize)>,
    assignment: Vec<usize>,
    started: bool,
}

impl<'a> ContinuousMaps<'a> {
    pub fn new(x: &'a DigitalImage, y: &'a DigitalImage) -> Self {
        ContinuousMaps {
            x,
            y,
            stack: Vec::new(),
            assignment: Vec::new(),
            started: false,
        }
    }

    fn candidates(&self, level: usize) -> Vec<usize> {
        let earlier: Vec<usize> = self
            .x
            .neighbors(level)
            .iter()
            .copied()
            .take_while(|&j| j < level)
            .collect();
        let pool: Vec<usize> = match earlier.first() {
            Some(&j) => closed_neighborhood(self.y, self.assignment[j]),
            None => (0..self.y.len()).collect(),
        };
        pool.into_iter()
            .filter(|&c| {
                earlier
                    .iter()
                    .all(|&k| self.y.adjacent_or_equal(self.assignment[k], c))
            })
            .collect()
    }
}

impl Iterator for ContinuousMaps<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let n = self.x.len();
        if !self.started {
            self.started = true;
            if n == 0 {
                return Some(Vec::new());
            }
            let c = self.candidates(0);
            self.stack.push((c, 0));
        }
        loop {
            let (cands, pos) = self.stack.last_mut()?;
            if *pos >= cands.len() {
                self.stack.pop();
                self.assignment.pop();
                continue;
            }
            let v = cands[*pos];
            *pos += 1;
            self.assignment.push(v);
            if self.assignment.len() == n {
                let out = self.assignment.clone();
                self.assignment.pop();
                return Some(out);
            }
            let c = self.candidates(self.assignment.len());
            self.stack.push((c, 0));
        }
    }
}

fn closed_neighborhood(y: &DigitalImage, p: usize) -> Vec<usize> {
    let mut v = Vec::with_capacity(y.neighbors(p).len() + 1);
    v.push(p);
    v.extend_from_slice(y.neighbors(p));
    v.sort_unstable();
    v
}

/// Every continuous map X → Y, or an error once more than `cap` are found.
pub fn enumerate_continuous_maps(
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
    cap: usize,
) -> Result<Vec<DigitalMap>> {
    let mut out = Vec::new();
    for a in ContinuousMaps::new(x, y) {
        if out.len() == cap {
            return Err(Error::CapExceeded {
                what: "continuous map enumeration",
                cap,
                partial: out.len(),
            });
        }
        out.push(DigitalMap {
            domain: x.clone(),
            codomain: y.clone(),
            assignment: a,
        });
    }
    Ok(out)
}

/// Calls `visit` on every g with f →g a one-step move under `relation`
/// (g = f included).
fn for_each_one_step(
    x: &DigitalImage,
    y: &DigitalImage,
    f: &[usize],
    relation: Relation,
    visit: &mut impl FnMut(&[usize]),
) {
    fn rec(
        x: &DigitalImage,
        y: &DigitalImage,
        f: &[usize],
        relation: Relation,
        g: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        let i = g.len();
        if i == f.len() {
            visit(g);
            return;
        }
        for c in closed_neighborhood(y, f[i]) {
            let ok = x.neighbors(i).iter().take_while(|&&k| k < i).all(|&k| {
                y.adjacent_or_equal(g[k], c)
                    && (relation == Relation::Ordinary
                        || (y.adjacent_or_equal(f[k], c) && y.adjacent_or_equal(g[k], f[i])))
            });
            if ok {
                g.push(c);
                rec(x, y, f, relation, g, visit);
                g.pop();
            }
        }
    }
    let mut g = Vec::with_capacity(f.len());
    rec(x, y, f, relation, &mut g, visit);
}

/// Partition of all continuous maps X → Y into homotopy classes.
#[derive(Clone, Debug)]
pub struct HomotopyClasses {
    pub relation: Relation,
    pub maps: Vec<DigitalMap>,
    /// Indices into `maps`; each class sorted, classes ordered by first member.
    pub classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl HomotopyClasses {
    pub fn class_of(&self, f: &DigitalMap) -> Option<usize> {
        self.index.get(&f.assignment).map(|&i| self.class_of[i])
    }

    pub fn class_members(&self, class: usize) -> impl Iterator<Item = &DigitalMap> {
        self.classes[class].iter().map(|&i| &self.maps[i])
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn homotopy_classes(
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
    relation: Relation,
    cap: usize,
) -> Result<HomotopyClasses> {
    let maps = enumerate_continuous_maps(x, y, cap)?;
    let index: HashMap<Vec<usize>, usize> = maps
        .iter()
        .enumerate()
        .map(|(i, m)| (m.assignment.clone(), i))
        .collect();
    let mut class_of = vec![usize::MAX; maps.len()];
    let mut classes = Vec::new();
    for start in 0..maps.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for_each_one_step(x, y, &maps[v].assignment, relation, &mut |g| {
                let w = index[g];
                if class_of[w] == usize::MAX {
                    class_of[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            });
        }
        members.sort_unstable();
        classes.push(members);
    }
    Ok(HomotopyClasses {
        relation,
        maps,
        classes,
        class_of,
        index,
    })
}

/// Whether f and g lie in the same component of the one-step graph. The
/// search visits at most `cap` maps.
pub fn are_homotopic(f: &DigitalMap, g: &DigitalMap, relation: Relation, cap: usize) -> Result<bool> {
    check_pair(f, g)?;
    if !f.is_continuous() || !g.is_continuous() {
        return Err(Error::Precondition("homotopy is defined for continuous maps".into()));
    }
    let (x, y) = (&f.domain, &f.codomain);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([f.assignment.clone()]);
    let mut queue = VecDeque::from([f.assignment.clone()]);
    while let Some(v) = queue.pop_front() {
        if v == g.assignment {
            return Ok(true);
        }
        let mut fresh = Vec::new();
        for_each_one_step(x, y, &v, relation, &mut |h| {
            if !seen.contains(h) {
                fresh.push(h.to_vec());
            }
        });
        for h in fresh {
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "homotopy search",
                        cap,
                        partial: seen.len() - 1,
                    });
                }
                queue.push_back(h);
            }
        }
    }
    Ok(false)
}
