//! The algebraic double-cut-and-join operator and everything built on it:
//! component decomposition of a genome pair, the closed-form distance,
//! optimal sorting scenarios and scenario counts.
//!
//! Throughout, `σ = π₂π₁` is the product of the target and source genomic
//! permutations (source applied first).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::exec::Execution;
use crate::genome::Genome;
use crate::perm::{Cycle, Permutation};

/// Default cap on the distance for exhaustive scenario search.
pub const SCENARIO_DISTANCE_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcjError {
    #[error("a DCJ needs two distinct points, got {0} twice")]
    SamePoint(usize),
    #[error("point {point} lies outside 1..={degree}")]
    Range { point: usize, degree: usize },
    #[error("genomes have different sizes: {0} vs {1} regions")]
    SizeMismatch(usize, usize),
    #[error("component is not conjugate; its two telomeres must be joined first")]
    NotConjugate,
    #[error("no closed-form scenario count: {0}")]
    NoClosedForm(&'static str),
    #[error("distance {distance} exceeds the exhaustive search limit {limit}; pass allow_large to override")]
    TooLarge { distance: usize, limit: usize },
}

/// How a DCJ acted on the genome it was applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DcjMode {
    /// `(i,j)·π`: fusion of two telomeres or fission of an adjacency.
    Multiply,
    /// `(i,j)·π·(i,j)`: exchange of extremities between two vertices.
    Conjugate,
}

impl DcjMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DcjMode::Multiply => "multiply",
            DcjMode::Conjugate => "conjugate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "multiply" => Some(DcjMode::Multiply),
            "conjugate" => Some(DcjMode::Conjugate),
            _ => None,
        }
    }
}

impl fmt::Display for DcjMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DcjOperation {
    pub i: usize,
    pub j: usize,
    pub mode: DcjMode,
}

impl fmt::Display for DcjOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({},{}) mode={}", self.i, self.j, self.mode)
    }
}

fn check_pair(g: &Genome, i: usize, j: usize) -> Result<(), DcjError> {
    let degree = g.degree();
    for point in [i, j] {
        if point == 0 || point > degree {
            return Err(DcjError::Range { point, degree });
        }
    }
    if i == j {
        return Err(DcjError::SamePoint(i));
    }
    Ok(())
}

fn check_sizes(g1: &Genome, g2: &Genome) -> Result<(), DcjError> {
    if g1.n() != g2.n() {
        return Err(DcjError::SizeMismatch(g1.n(), g2.n()));
    }
    Ok(())
}

/// Applies `D_ij`: left multiplication by `(i,j)` when `i` and `j` are both
/// telomeres or adjacent to each other, conjugation by `(i,j)` otherwise.
/// Applying the same `(i,j)` twice returns the original genome.
pub fn apply_dcj(g: &Genome, i: usize, j: usize) -> Result<(Genome, DcjOperation), DcjError> {
    check_pair(g, i, j)?;
    Ok(apply_unchecked(g, i, j))
}

fn apply_unchecked(g: &Genome, i: usize, j: usize) -> (Genome, DcjOperation) {
    let multiply = (g.is_telomere(i) && g.is_telomere(j)) || g.partner(i) == j;
    let t = |x: usize| {
        if x == i {
            j
        } else if x == j {
            i
        } else {
            x
        }
    };
    let images = (1..=g.degree())
        .map(|x| {
            if multiply {
                t(g.partner(x))
            } else {
                t(g.partner(t(x)))
            }
        })
        .collect();
    let mode = if multiply {
        DcjMode::Multiply
    } else {
        DcjMode::Conjugate
    };
    (
        Genome::from_images_unchecked(images),
        DcjOperation { i, j, mode },
    )
}

/// Restriction of a genomic permutation to one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPermutation {
    images: BTreeMap<usize, usize>,
}

impl SubPermutation {
    fn restrict(g: &Genome, points: &[usize]) -> Self {
        SubPermutation {
            images: points.iter().map(|&x| (x, g.partner(x))).collect(),
        }
    }

    /// Image of `x`; points outside the component are fixed.
    pub fn apply(&self, x: usize) -> usize {
        self.images.get(&x).copied().unwrap_or(x)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .filter(|(x, y)| x == y)
            .map(|(x, _)| *x)
            .collect()
    }

    pub fn adjacencies(&self) -> Vec<(usize, usize)> {
        self.images
            .iter()
            .filter(|(x, y)| x < y)
            .map(|(x, y)| (*x, *y))
            .collect()
    }

    /// The restriction extended by the identity to all of `1..=degree`.
    pub fn to_permutation(&self, degree: usize) -> Permutation {
        let mut images: Vec<usize> = (1..=degree).collect();
        for (&x, &y) in &self.images {
            images[x - 1] = y;
        }
        Permutation::from_images_unchecked(images)
    }
}

/// Renders every cycle of the restriction, 1-cycles included.
impl fmt::Display for SubPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&x, &y) in &self.images {
            if x == y {
                write!(f, "({x})")?;
            } else if x < y {
                write!(f, "({x},{y})")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// Both genomes agree on the component.
    Trivial,
    /// The restrictions differ but have the same cycle type.
    Conjugate,
    /// One restriction has two telomeres the other lacks.
    NonConjugate,
}

impl ComponentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ComponentKind::Trivial => "trivial",
            ComponentKind::Conjugate => "conjugate",
            ComponentKind::NonConjugate => "non_conjugate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "trivial" => Some(ComponentKind::Trivial),
            "conjugate" => Some(ComponentKind::Conjugate),
            "non_conjugate" => Some(ComponentKind::NonConjugate),
            _ => None,
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: usize,
    /// Sorted ascending.
    pub points: Vec<usize>,
    pub sub1: SubPermutation,
    pub sub2: SubPermutation,
    pub kind: ComponentKind,
}

impl Component {
    pub fn min_point(&self) -> usize {
        self.points[0]
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Number of DCJ operations needed to sort `sub1` into `sub2`.
    pub fn distance(&self) -> usize {
        let lt = self.size() - component_product(self).len();
        component_distance(self.kind, lt)
    }
}

fn component_distance(kind: ComponentKind, lt: usize) -> usize {
    match kind {
        ComponentKind::Trivial => 0,
        ComponentKind::Conjugate => lt / 2,
        ComponentKind::NonConjugate => lt.div_ceil(2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub degree: usize,
    /// Ordered by smallest point.
    pub classes: Vec<Component>,
}

// Connected components of the graph with edges {x, π₁(x)} and {x, π₂(x)};
// returns a class label per point (index x-1) and the sorted classes.
fn partition(g1: &Genome, g2: &Genome) -> (Vec<usize>, Vec<Vec<usize>>) {
    const UNSET: usize = usize::MAX;
    let degree = g1.degree();
    let mut label = vec![UNSET; degree];
    let mut classes = Vec::new();
    let mut stack = Vec::new();
    for start in 1..=degree {
        if label[start - 1] != UNSET {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        label[start - 1] = id;
        stack.push(start);
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in [g1.partner(x), g2.partner(x)] {
                if label[y - 1] == UNSET {
                    label[y - 1] = id;
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    (label, classes)
}

fn classify(g1: &Genome, g2: &Genome, points: &[usize]) -> ComponentKind {
    if points.iter().all(|&x| g1.partner(x) == g2.partner(x)) {
        return ComponentKind::Trivial;
    }
    let f1 = points.iter().filter(|&&x| g1.is_telomere(x)).count();
    let f2 = points.iter().filter(|&&x| g2.is_telomere(x)).count();
    if f1 == f2 {
        ComponentKind::Conjugate
    } else {
        ComponentKind::NonConjugate
    }
}

/// Splits `1..=2n` into the classes of the relation generated by `π₁` and
/// `π₂`, each with its two sub-permutations and classification.
pub fn components(g1: &Genome, g2: &Genome) -> Result<ComponentPartition, DcjError> {
    check_sizes(g1, g2)?;
    let (_, classes) = partition(g1, g2);
    let classes = classes
        .into_iter()
        .enumerate()
        .map(|(id, points)| Component {
            id,
            sub1: SubPermutation::restrict(g1, &points),
            sub2: SubPermutation::restrict(g2, &points),
            kind: classify(g1, g2, &points),
            points,
        })
        .collect();
    Ok(ComponentPartition {
        degree: g1.degree(),
        classes,
    })
}

/// Cycles of `sub2 · sub1` on the component's points, 1-cycles included,
/// in canonical order.
pub fn component_product(c: &Component) -> Vec<Cycle> {
    let mut seen = HashSet::with_capacity(c.points.len());
    let mut out = Vec::new();
    for &start in &c.points {
        if seen.contains(&start) {
            continue;
        }
        let mut pts = Vec::new();
        let mut x = start;
        while seen.insert(x) {
            pts.push(x);
            x = c.sub2.apply(c.sub1.apply(x));
        }
        out.push(Cycle::canonical(pts));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDistance {
    pub id: usize,
    pub min_point: usize,
    pub size: usize,
    pub kind: ComponentKind,
    pub distance: usize,
}

/// Closed-form distance with its ingredients.
///
/// `total = (lt + nc) / 2`, where `lt` is the transposition length of
/// `π₂π₁` and `nc` counts the cycles of `π₂π₁` holding two distinct
/// telomeres of the same genome. `components` sums to `total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub total: usize,
    pub lt: usize,
    pub nc: usize,
    pub components: Vec<ComponentDistance>,
}

impl DistanceReport {
    pub fn nontrivial(&self) -> impl Iterator<Item = &ComponentDistance> {
        self.components
            .iter()
            .filter(|c| c.kind != ComponentKind::Trivial)
    }

    /// Checks `total = (lt + nc)/2 = Σ component distances`.
    pub fn is_consistent(&self) -> bool {
        (self.lt + self.nc).is_multiple_of(2)
            && self.total == (self.lt + self.nc) / 2
            && self.total == self.components.iter().map(|c| c.distance).sum::<usize>()
    }
}

struct ProductCycle {
    class: usize,
    len: usize,
    counts_for_nc: bool,
}

// Walks the cycles of σ = π₂π₁ once.
fn product_cycles(g1: &Genome, g2: &Genome, label: Option<&[usize]>) -> Vec<ProductCycle> {
    let degree = g1.degree();
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 1..=degree {
        if seen[start - 1] {
            continue;
        }
        let (mut len, mut f1, mut f2) = (0, 0, 0);
        let mut x = start;
        while !seen[x - 1] {
            seen[x - 1] = true;
            len += 1;
            f1 += usize::from(g1.is_telomere(x));
            f2 += usize::from(g2.is_telomere(x));
            x = g2.partner(g1.partner(x));
        }
        out.push(ProductCycle {
            class: label.map_or(0, |l| l[start - 1]),
            len,
            counts_for_nc: f1 >= 2 || f2 >= 2,
        });
    }
    out
}

/// The DCJ distance alone, in linear time.
pub fn dcj_distance(g1: &Genome, g2: &Genome) -> Result<usize, DcjError> {
    check_sizes(g1, g2)?;
    Ok(distance_unchecked(g1, g2))
}

fn distance_unchecked(g1: &Genome, g2: &Genome) -> usize {
    let (lt, nc) = product_cycles(g1, g2, None)
        .iter()
        .fold((0, 0), |(lt, nc), c| {
            (lt + c.len - 1, nc + usize::from(c.counts_for_nc))
        });
    (lt + nc) / 2
}

pub fn distance(g1: &Genome, g2: &Genome) -> Result<DistanceReport, DcjError> {
    check_sizes(g1, g2)?;
    let (label, classes) = partition(g1, g2);
    let cycles = product_cycles(g1, g2, Some(&label));
    let mut cycles_per_class = vec![0usize; classes.len()];
    let (mut lt, mut nc) = (0, 0);
    for c in &cycles {
        cycles_per_class[c.class] += 1;
        lt += c.len - 1;
        nc += usize::from(c.counts_for_nc);
    }
    let components = classes
        .iter()
        .enumerate()
        .map(|(id, points)| {
            let kind = classify(g1, g2, points);
            ComponentDistance {
                id,
                min_point: points[0],
                size: points.len(),
                kind,
                distance: component_distance(kind, points.len() - cycles_per_class[id]),
            }
        })
        .collect();
    let report = DistanceReport {
        total: (lt + nc) / 2,
        lt,
        nc,
        components,
    };
    debug_assert!(report.is_consistent(), "{report:?}");
    Ok(report)
}

// The cycle g with g·src·g⁻¹ = dst on `points`, listed from its anchor.
// Anchor: the telomere of `dst` when the class is odd, else the smallest
// point. The cycle is the first u+1 points of the σ-orbit of the anchor.
fn sorting_cycle(
    points: &[usize],
    src: impl Fn(usize) -> usize,
    dst: impl Fn(usize) -> usize,
) -> Vec<usize> {
    let dst_telomere = points.iter().copied().find(|&x| dst(x) == x);
    let anchor = dst_telomere.unwrap_or(points[0]);
    let mut orbit = vec![anchor];
    let mut x = dst(src(anchor));
    while x != anchor {
        orbit.push(x);
        x = dst(src(x));
    }
    let keep = if dst_telomere.is_some() {
        // single cycle of length 2u+1
        orbit.len().div_ceil(2)
    } else {
        // one of two cycles of length u+1
        orbit.len()
    };
    orbit.truncate(keep);
    orbit
}

/// A cycle `g` of transposition length equal to the component distance
/// with `g·sub1·g⁻¹ = sub2`. Trivial components yield a 1-cycle.
pub fn sorting_element(c: &Component) -> Result<Cycle, DcjError> {
    match c.kind {
        ComponentKind::Trivial => Ok(Cycle::canonical(vec![c.min_point()])),
        ComponentKind::NonConjugate => Err(DcjError::NotConjugate),
        ComponentKind::Conjugate => Ok(Cycle::canonical(sorting_cycle(
            &c.points,
            |x| c.sub1.apply(x),
            |x| c.sub2.apply(x),
        ))),
    }
}

// (a, p_u)···(a, p_1) for the cycle (a, p_1, ..., p_u), listed in the order
// they act: (a, p_1) first.
fn star_factors(cycle: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    cycle[1..].iter().map(move |&p| (cycle[0], p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioStep {
    pub op: DcjOperation,
    pub genome: Genome,
}

/// A path of single DCJ operations starting at `origin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    origin: Genome,
    steps: Vec<ScenarioStep>,
}

impl Scenario {
    pub fn new(origin: Genome) -> Self {
        Scenario {
            origin,
            steps: Vec::new(),
        }
    }

    pub fn from_parts(origin: Genome, steps: Vec<ScenarioStep>) -> Self {
        Scenario { origin, steps }
    }

    pub fn origin(&self) -> &Genome {
        &self.origin
    }

    pub fn steps(&self) -> &[ScenarioStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The last genome of the scenario.
    pub fn target(&self) -> &Genome {
        self.steps.last().map_or(&self.origin, |s| &s.genome)
    }

    /// Applies `D_ij` to the current last genome.
    pub fn push(&mut self, i: usize, j: usize) -> Result<&ScenarioStep, DcjError> {
        let (genome, op) = apply_dcj(self.target(), i, j)?;
        self.steps.push(ScenarioStep { op, genome });
        Ok(self.steps.last().unwrap())
    }

    /// True when every recorded step (genome and mode) is reproduced by
    /// applying its operation to the previous genome.
    pub fn replays(&self) -> bool {
        let mut cur = &self.origin;
        for step in &self.steps {
            match apply_dcj(cur, step.op.i, step.op.j) {
                Ok((g, op)) if g == step.genome && op == step.op => cur = &step.genome,
                _ => return false,
            }
        }
        true
    }

    /// All genomes visited, origin first.
    pub fn genomes(&self) -> impl Iterator<Item = &Genome> {
        std::iter::once(&self.origin).chain(self.steps.iter().map(|s| &s.genome))
    }
}

/// One optimal scenario from `g1` to `g2`.
///
/// Components are handled in order of their smallest point. A conjugate
/// component is sorted by the star factorization of its sorting element.
/// A non-conjugate component whose two telomeres lie in `g1` starts by
/// joining them; if they lie in `g2`, the component is first sorted towards
/// `g2` with those telomeres joined, and a final step splits them.
pub fn optimal_scenario(g1: &Genome, g2: &Genome) -> Result<Scenario, DcjError> {
    check_sizes(g1, g2)?;
    let (_, classes) = partition(g1, g2);
    let mut scenario = Scenario::new(g1.clone());
    for points in &classes {
        if classify(g1, g2, points) == ComponentKind::Trivial {
            continue;
        }
        let f1: Vec<usize> = points
            .iter()
            .copied()
            .filter(|&x| g1.is_telomere(x))
            .collect();
        let f2: Vec<usize> = points
            .iter()
            .copied()
            .filter(|&x| g2.is_telomere(x))
            .collect();
        match (f1.as_slice(), f2.as_slice()) {
            (a, b) if a.len() == b.len() => {
                let cur = scenario.target().clone();
                let g = sorting_cycle(points, |x| cur.partner(x), |x| g2.partner(x));
                for (i, j) in star_factors(&g) {
                    scenario.push(i, j)?;
                }
            }
            (&[i1, i2], &[]) => {
                scenario.push(i1, i2)?;
                let cur = scenario.target().clone();
                let g = sorting_cycle(points, |x| cur.partner(x), |x| g2.partner(x));
                for (i, j) in star_factors(&g) {
                    scenario.push(i, j)?;
                }
            }
            (&[], &[i1, i2]) => {
                let cur = scenario.target().clone();
                let joined = |x: usize| match x {
                    _ if x == i1 => i2,
                    _ if x == i2 => i1,
                    _ => g2.partner(x),
                };
                let g = sorting_cycle(points, |x| cur.partner(x), joined);
                for (i, j) in star_factors(&g) {
                    scenario.push(i, j)?;
                }
                scenario.push(i1, i2)?;
            }
            _ => unreachable!("a component holds at most two telomeres"),
        }
    }
    debug_assert_eq!(scenario.target(), g2);
    Ok(scenario)
}

/// `(d+1)^(d-1)` optimal scenarios, valid when `g1` and `g2` have the same
/// cycle type and differ on a single component. Identical genomes have the
/// one empty scenario.
pub fn count_optimal_scenarios(g1: &Genome, g2: &Genome) -> Result<BigUint, DcjError> {
    let report = distance(g1, g2)?;
    let d = report.total;
    if d == 0 {
        return Ok(BigUint::one());
    }
    if g1.telomeres().len() != g2.telomeres().len() {
        return Err(DcjError::NoClosedForm("genomes are not conjugate"));
    }
    if report.nontrivial().count() != 1 {
        return Err(DcjError::NoClosedForm(
            "more than one non-trivial component",
        ));
    }
    Ok(BigUint::from(d + 1).pow(d as u32 - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioEnumeration {
    pub scenarios: Vec<Scenario>,
    /// Set when the limit cut the enumeration short.
    pub truncated: bool,
}

fn guard_distance(d: usize, allow_large: bool) -> Result<(), DcjError> {
    if d > SCENARIO_DISTANCE_LIMIT && !allow_large {
        return Err(DcjError::TooLarge {
            distance: d,
            limit: SCENARIO_DISTANCE_LIMIT,
        });
    }
    Ok(())
}

// Distinct genomes one step closer to `target`, with the first (i<j)
// operation producing each.
fn closer_neighbors(x: &Genome, target: &Genome, remaining: usize) -> Vec<(DcjOperation, Genome)> {
    let degree = x.degree();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 1..=degree {
        for j in (i + 1)..=degree {
            let (y, op) = apply_unchecked(x, i, j);
            if distance_unchecked(&y, target) + 1 == remaining && seen.insert(y.clone()) {
                out.push((op, y));
            }
        }
    }
    out
}

/// Every optimal scenario from `g1` to `g2` by depth-first search, each
/// exactly once (scenarios are compared as genome sequences). Stops after
/// `limit` scenarios when one is given.
pub fn enumerate_scenarios(
    g1: &Genome,
    g2: &Genome,
    limit: Option<usize>,
    allow_large: bool,
) -> Result<ScenarioEnumeration, DcjError> {
    let d = dcj_distance(g1, g2)?;
    guard_distance(d, allow_large)?;
    let mut out = ScenarioEnumeration {
        scenarios: Vec::new(),
        truncated: false,
    };
    let mut path = Vec::with_capacity(d);
    dfs(g1, g2, d, g1, &mut path, limit, &mut out);
    Ok(out)
}

fn dfs(
    origin: &Genome,
    target: &Genome,
    remaining: usize,
    x: &Genome,
    path: &mut Vec<ScenarioStep>,
    limit: Option<usize>,
    out: &mut ScenarioEnumeration,
) {
    if out.truncated {
        return;
    }
    if remaining == 0 {
        if limit.is_some_and(|l| out.scenarios.len() >= l) {
            out.truncated = true;
            return;
        }
        out.scenarios
            .push(Scenario::from_parts(origin.clone(), path.clone()));
        return;
    }
    for (op, y) in closer_neighbors(x, target, remaining) {
        path.push(ScenarioStep { op, genome: y });
        let y = path.last().unwrap().genome.clone();
        dfs(origin, target, remaining - 1, &y, path, limit, out);
        path.pop();
    }
}

/// Number of optimal scenarios by exhaustive search over the shortest-path
/// DAG, memoized per genome. The first branching level is spread over
/// `exec`.
pub fn count_scenarios_exhaustive(
    g1: &Genome,
    g2: &Genome,
    allow_large: bool,
    exec: Execution,
) -> Result<BigUint, DcjError> {
    let d = dcj_distance(g1, g2)?;
    guard_distance(d, allow_large)?;
    if d == 0 {
        return Ok(BigUint::one());
    }
    let first = closer_neighbors(g1, g2, d);
    let counts = exec.map(&first, |(_, y)| {
        let mut memo = HashMap::new();
        count_paths(y, g2, d - 1, &mut memo)
    });
    Ok(counts.into_iter().sum())
}

fn count_paths(
    x: &Genome,
    target: &Genome,
    remaining: usize,
    memo: &mut HashMap<Genome, BigUint>,
) -> BigUint {
    if remaining == 0 {
        return BigUint::one();
    }
    if let Some(c) = memo.get(x) {
        return c.clone();
    }
    let total: BigUint = closer_neighbors(x, target, remaining)
        .iter()
        .map(|(_, y)| count_paths(y, target, remaining - 1, memo))
        .sum();
    memo.insert(x.clone(), total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genome(text: &str, n: usize) -> Genome {
        Genome::parse(text, n).unwrap()
    }

    #[test]
    fn operator_cases() {
        let (g, op) = apply_dcj(&genome("(1,3)(2,4)", 2), 1, 2).unwrap();
        assert_eq!(g, genome("(2,3)(1,4)", 2));
        assert_eq!(op.mode, DcjMode::Conjugate);
        let (g, op) = apply_dcj(&genome("(1,2)", 1), 1, 2).unwrap();
        assert_eq!(g, Genome::identity(1));
        assert_eq!(op.mode, DcjMode::Multiply);
        let (g, op) = apply_dcj(&Genome::identity(2), 1, 2).unwrap();
        assert_eq!(g, genome("(1,2)", 2));
        assert_eq!(op.mode, DcjMode::Multiply);
        // (i,k)(j) -> (j,k)(i)
        let (g, _) = apply_dcj(&genome("(1,3)", 2), 1, 2).unwrap();
        assert_eq!(g, genome("(2,3)", 2));
    }

    #[test]
    fn operator_errors() {
        let g = Genome::identity(2);
        assert_eq!(apply_dcj(&g, 2, 2), Err(DcjError::SamePoint(2)));
        assert_eq!(
            apply_dcj(&g, 1, 5),
            Err(DcjError::Range {
                point: 5,
                degree: 4
            })
        );
        assert!(apply_dcj(&g, 0, 1).is_err());
    }

    fn two_component_pair() -> (Genome, Genome) {
        (
            genome("(1,6)(2,3)(4,5)(7,8)", 4),
            genome("(1,2)(3,4)(5,6)", 4),
        )
    }

    #[test]
    fn components_of_worked_pair() {
        let (g1, g2) = two_component_pair();
        let p = components(&g1, &g2).unwrap();
        let sets: Vec<&[usize]> = p.classes.iter().map(|c| c.points.as_slice()).collect();
        assert_eq!(sets, [&[1, 2, 3, 4, 5, 6][..], &[7, 8][..]]);
        assert_eq!(p.classes[0].sub1.to_string(), "(1,6)(2,3)(4,5)");
        assert_eq!(p.classes[1].sub1.to_string(), "(7,8)");
        assert_eq!(p.classes[1].sub2.to_string(), "(7)(8)");
        assert_eq!(p.classes[0].kind, ComponentKind::Conjugate);
        assert_eq!(p.classes[1].kind, ComponentKind::NonConjugate);

        let prod: Vec<String> = component_product(&p.classes[0])
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(prod, ["(1,5,3)", "(2,4,6)"]);
        // π₁⁽¹⁾π₂⁽¹⁾ is the inverse product
        let s1 = p.classes[0].sub1.to_permutation(8);
        let s2 = p.classes[0].sub2.to_permutation(8);
        assert_eq!(s1.compose(&s2).unwrap().to_string(), "(1,3,5)(2,6,4)");
        let prod: Vec<String> = component_product(&p.classes[1])
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(prod, ["(7,8)"]);
    }

    #[test]
    fn identical_genomes_have_trivial_components() {
        let g = genome("(1,4)(2,7)", 4);
        let p = components(&g, &g).unwrap();
        assert!(p.classes.iter().all(|c| c.kind == ComponentKind::Trivial));
        let singleton = p.classes.iter().find(|c| c.points == [3]).unwrap();
        assert_eq!(component_product(singleton), [Cycle::new(vec![3]).unwrap()]);
        let r = distance(&g, &g).unwrap();
        assert_eq!((r.total, r.lt, r.nc), (0, 0, 0));
    }

    #[test]
    fn worked_distances() {
        let a = genome("(1,6)(2,3)(4,5)", 3);
        let b = genome("(1,2)(3,4)(5,6)", 3);
        let r = distance(&a, &b).unwrap();
        assert_eq!((r.total, r.lt, r.nc), (2, 4, 0));
        let (g1, g2) = two_component_pair();
        let r = distance(&g1, &g2).unwrap();
        assert_eq!((r.total, r.lt, r.nc), (3, 5, 1));
        assert_eq!(
            r.components.iter().map(|c| c.distance).collect::<Vec<_>>(),
            [2, 1]
        );
        assert!(r.is_consistent());
    }

    #[test]
    fn size_mismatch() {
        let err = distance(&Genome::identity(2), &Genome::identity(3));
        assert_eq!(err, Err(DcjError::SizeMismatch(2, 3)));
        assert!(components(&Genome::identity(2), &Genome::identity(3)).is_err());
        assert!(optimal_scenario(&Genome::identity(2), &Genome::identity(3)).is_err());
    }

    #[test]
    fn sorting_element_of_three_cycle() {
        let g1 = genome("(1,2)(3,4)(5,6)", 3);
        let g2 = genome("(1,6)(2,3)(4,5)", 3);
        let p = components(&g1, &g2).unwrap();
        let c = &p.classes[0];
        let g = sorting_element(c).unwrap();
        assert_eq!(g.to_string(), "(1,3,5)");
        let gp = g.to_permutation(6).unwrap();
        assert_eq!(
            c.sub1.to_permutation(6).conjugate(&gp).unwrap(),
            c.sub2.to_permutation(6)
        );
    }

    #[test]
    fn sorting_element_guards() {
        let (g1, g2) = two_component_pair();
        let p = components(&g1, &g2).unwrap();
        assert_eq!(sorting_element(&p.classes[1]), Err(DcjError::NotConjugate));
        let same = components(&g1, &g1).unwrap();
        let g = sorting_element(&same.classes[0]).unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn odd_component_anchor() {
        // class {1,2,3}: source (2,3), target (1,2)
        let g1 = genome("(2,3)", 2);
        let g2 = genome("(1,2)", 2);
        let p = components(&g1, &g2).unwrap();
        let c = p
            .classes
            .iter()
            .find(|c| c.kind == ComponentKind::Conjugate)
            .unwrap();
        let g = sorting_element(c).unwrap().to_permutation(4).unwrap();
        assert_eq!(
            c.sub1.to_permutation(4).conjugate(&g).unwrap(),
            c.sub2.to_permutation(4)
        );
        assert_eq!(g.transposition_length(), 1);
    }

    #[test]
    fn optimal_scenarios_replay() {
        let g1 = genome("(1,2)(3,4)(5,6)", 3);
        let g2 = genome("(1,6)(2,3)(4,5)", 3);
        let s = optimal_scenario(&g1, &g2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.target(), &g2);
        assert!(s.replays());
        assert!(optimal_scenario(&g1, &g1).unwrap().is_empty());

        let (g1, g2) = two_component_pair();
        let s = optimal_scenario(&g1, &g2).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.replays());
        let split = s
            .steps()
            .iter()
            .find(|st| (st.op.i, st.op.j) == (7, 8))
            .unwrap();
        assert_eq!(split.op.mode, DcjMode::Multiply);
    }

    #[test]
    fn scenario_counts() {
        let g1 = genome("(1,2)(3,4)(5,6)", 3);
        let g2 = genome("(1,6)(2,3)(4,5)", 3);
        assert_eq!(
            count_optimal_scenarios(&g1, &g2).unwrap(),
            BigUint::from(3u32)
        );
        let e = enumerate_scenarios(&g1, &g2, None, false).unwrap();
        assert_eq!(e.scenarios.len(), 3);
        assert!(!e.truncated);
        assert!(e.scenarios.iter().all(|s| s.replays() && s.target() == &g2));
        let count = count_scenarios_exhaustive(&g1, &g2, false, Execution::Sequential).unwrap();
        assert_eq!(count, BigUint::from(3u32));

        let one = genome("(1,3)(2,4)", 2);
        let other = genome("(1,4)(2,3)", 2);
        assert_eq!(dcj_distance(&one, &other).unwrap(), 1);
        assert_eq!(
            count_optimal_scenarios(&one, &other).unwrap(),
            BigUint::one()
        );

        let same = enumerate_scenarios(&g1, &g1, None, false).unwrap();
        assert_eq!(same.scenarios.len(), 1);
        assert!(same.scenarios[0].is_empty());
    }

    #[test]
    fn scenario_count_scope() {
        let (g1, g2) = two_component_pair();
        assert!(matches!(
            count_optimal_scenarios(&g1, &g2),
            Err(DcjError::NoClosedForm(_))
        ));
        // two conjugate components
        let a = genome("(1,2)(3,4)(5,6)(7,8)", 4);
        let b = genome("(1,4)(2,3)(5,8)(6,7)", 4);
        assert!(matches!(
            count_optimal_scenarios(&a, &b),
            Err(DcjError::NoClosedForm(_))
        ));
    }

    #[test]
    fn enumeration_limit_and_guard() {
        let g1 = genome("(1,2)(3,4)(5,6)", 3);
        let g2 = genome("(1,6)(2,3)(4,5)", 3);
        let e = enumerate_scenarios(&g1, &g2, Some(2), false).unwrap();
        assert_eq!(e.scenarios.len(), 2);
        assert!(e.truncated);
        let e = enumerate_scenarios(&g1, &g2, Some(3), false).unwrap();
        assert!(!e.truncated);

        let a = Genome::identity(6);
        let b = genome("(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)", 6);
        assert_eq!(dcj_distance(&a, &b).unwrap(), 6);
        assert_eq!(
            enumerate_scenarios(&a, &b, Some(1), false),
            Err(DcjError::TooLarge {
                distance: 6,
                limit: 5
            })
        );
        assert!(
            enumerate_scenarios(&a, &b, Some(1), true)
                .unwrap()
                .truncated
        );
    }
}
