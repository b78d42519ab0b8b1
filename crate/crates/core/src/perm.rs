//! Permutations of the point set `1..=degree`.
//!
//! Products are read right to left: `outer.compose(&inner)` maps `i` to
//! `outer(inner(i))`. Cycles are kept in canonical form (smallest point
//! first, cycles ordered by their smallest point), and 1-cycles are tracked
//! internally but omitted when rendering.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("point {point} lies outside 1..={degree}")]
    Range { point: usize, degree: usize },
    #[error("point {0} appears in more than one cycle")]
    Overlap(usize),
    #[error("point {0} is repeated inside a cycle")]
    RepeatedPoint(usize),
    #[error("a cycle needs at least one point")]
    EmptyCycle,
    #[error("a transposition needs two distinct points, got ({0},{0})")]
    DegenerateTransposition(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image table is not a bijection on 1..={0}")]
    NotBijection(usize),
    #[error("bad cycle notation at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

/// A single cycle `(p1,p2,...,pk)`, meaning `p1 -> p2 -> ... -> pk -> p1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    /// Builds a cycle from distinct positive points. The stored form is
    /// rotated so that the smallest point comes first.
    pub fn new(points: Vec<usize>) -> Result<Self, PermError> {
        if points.is_empty() {
            return Err(PermError::EmptyCycle);
        }
        let mut seen = std::collections::HashSet::with_capacity(points.len());
        for &p in &points {
            if p == 0 {
                return Err(PermError::Range {
                    point: 0,
                    degree: 0,
                });
            }
            if !seen.insert(p) {
                return Err(PermError::RepeatedPoint(p));
            }
        }
        Ok(Self::canonical(points))
    }

    pub(crate) fn canonical(mut points: Vec<usize>) -> Self {
        if let Some(pos) = points
            .iter()
            .enumerate()
            .min_by_key(|(_, &p)| p)
            .map(|(i, _)| i)
        {
            points.rotate_left(pos);
        }
        Cycle(points)
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, point: usize) -> bool {
        self.0.contains(&point)
    }

    pub fn to_permutation(&self, degree: usize) -> Result<Permutation, PermError> {
        Permutation::from_cycles(degree, std::slice::from_ref(self))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Multiset of cycle lengths, 1-cycles included, sorted in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An unordered pair of distinct points, stored smaller point first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition(usize, usize);

impl Transposition {
    pub fn new(i: usize, j: usize) -> Result<Self, PermError> {
        if i == j {
            return Err(PermError::DegenerateTransposition(i));
        }
        if i == 0 || j == 0 {
            return Err(PermError::Range {
                point: 0,
                degree: 0,
            });
        }
        Ok(Transposition(i.min(j), i.max(j)))
    }

    pub fn points(self) -> (usize, usize) {
        (self.0, self.1)
    }

    #[inline]
    pub fn swap(self, x: usize) -> usize {
        if x == self.0 {
            self.1
        } else if x == self.1 {
            self.0
        } else {
            x
        }
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// A product of transpositions written left to right; `items()[0]` is the
/// leftmost factor, so the last item acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranspositionSequence(Vec<Transposition>);

impl TranspositionSequence {
    pub fn new(items: Vec<Transposition>) -> Self {
        TranspositionSequence(items)
    }

    pub fn items(&self) -> &[Transposition] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Evaluates the product in `S_degree`.
    pub fn product(&self, degree: usize) -> Result<Permutation, PermError> {
        let mut acc = Permutation::identity(degree);
        for t in self.0.iter().rev() {
            let (a, b) = t.points();
            let tp = Permutation::transposition(degree, a, b)?;
            acc = tp.compose(&acc)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for TranspositionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for t in &self.0 {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// A bijection on `1..=degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[i - 1] = p(i)
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree).collect(),
        }
    }

    /// Builds a permutation from its image table: `images[k]` is the image
    /// of point `k + 1`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &x in &images {
            if x == 0 || x > degree {
                return Err(PermError::Range { point: x, degree });
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(PermError::NotBijection(degree));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn from_cycles(degree: usize, cycles: &[Cycle]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut used = vec![false; degree];
        for c in cycles {
            let pts = c.points();
            for &p in pts {
                if p == 0 || p > degree {
                    return Err(PermError::Range { point: p, degree });
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(PermError::Overlap(p));
                }
            }
            for (k, &p) in pts.iter().enumerate() {
                images[p - 1] = pts[(k + 1) % pts.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(degree: usize, i: usize, j: usize) -> Result<Self, PermError> {
        let t = Transposition::new(i, j)?;
        let (a, b) = t.points();
        if b > degree {
            return Err(PermError::Range { point: b, degree });
        }
        let mut images: Vec<usize> = (1..=degree).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1,3)(2,4,6,5)` or `()`. Whitespace and
    /// explicit 1-cycles are accepted.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let cycles = parse_cycles(text)?;
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image table, 1-based values.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// `self ∘ inner`, i.e. apply `inner` first.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != inner.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), inner.degree()));
        }
        let images = inner.images.iter().map(|&x| self.images[x - 1]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x - 1] = k + 1;
        }
        Permutation { images }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != g.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), g.degree()));
        }
        // (g p g^-1)(g(x)) = g(p(x))
        let mut images = vec![0; self.degree()];
        for x in 1..=self.degree() {
            images[g.apply(x) - 1] = g.apply(self.apply(x));
        }
        Ok(Permutation { images })
    }

    /// Disjoint cycle decomposition including 1-cycles, in canonical order.
    pub fn cycles(&self) -> Vec<Cycle> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut pts = Vec::new();
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                pts.push(x);
                x = self.apply(x);
            }
            // starting from the smallest unvisited point keeps the form canonical
            out.push(Cycle(pts));
        }
        out
    }

    /// Cycles of length two or more.
    pub fn nontrivial_cycles(&self) -> Vec<Cycle> {
        self.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                x = self.apply(x);
            }
        }
        count
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(Cycle::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    /// Minimal number of transpositions whose product is `self`.
    pub fn transposition_length(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.degree())
            .filter(|&x| self.apply(x) == x)
            .collect()
    }

    pub fn is_involution(&self) -> bool {
        (1..=self.degree()).all(|x| self.apply(self.apply(x)) == x)
    }

    /// Every ordered minimal product of transpositions equal to `self`.
    ///
    /// The rightmost factor `(a,b)` of a minimal product must join two
    /// points of one cycle; peeling it off leaves `self · (a,b)`, which is one
    /// transposition shorter. Recursing on that remainder reaches each
    /// factorization exactly once.
    pub fn minimal_factorizations(&self) -> Vec<TranspositionSequence> {
        let mut out = Vec::new();
        let mut suffix = Vec::with_capacity(self.transposition_length());
        peel(self.clone(), &mut suffix, &mut out);
        out
    }
}

fn peel(p: Permutation, suffix: &mut Vec<Transposition>, out: &mut Vec<TranspositionSequence>) {
    let cycles = p.nontrivial_cycles();
    if cycles.is_empty() {
        let mut items = suffix.clone();
        items.reverse();
        out.push(TranspositionSequence(items));
        return;
    }
    for c in &cycles {
        let pts = c.points();
        for (x, &a) in pts.iter().enumerate() {
            for &b in &pts[x + 1..] {
                let t = Transposition(a.min(b), a.max(b));
                // p = q·t  =>  q = p·t
                let mut images = p.images.clone();
                images.swap(a - 1, b - 1);
                suffix.push(t);
                peel(Permutation { images }, suffix, out);
                suffix.pop();
            }
        }
    }
}

/// All minimal transposition factorizations of a single cycle viewed inside
/// `S_degree`. A k-cycle has `k^(k-2)` of them; a 1-cycle has only the empty
/// product.
pub fn enumerate_minimal_factorizations(
    cycle: &Cycle,
    degree: usize,
) -> Result<Vec<TranspositionSequence>, PermError> {
    Ok(cycle.to_permutation(degree)?.minimal_factorizations())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles() {
            if c.len() > 1 {
                write!(f, "{c}")?;
                any = true;
            }
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Infers the degree as the largest point mentioned.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cycles = parse_cycles(s)?;
        let degree = cycles
            .iter()
            .flat_map(|c| c.points().iter().copied())
            .max()
            .unwrap_or(0);
        Permutation::from_cycles(degree, &cycles)
    }
}

/// Parses a product of disjoint cycles in the rendering grammar. `()` is the
/// empty product.
pub fn parse_cycles(text: &str) -> Result<Vec<Cycle>, PermError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut cycles = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let syntax = |offset: usize, message: &str| PermError::Syntax {
        offset,
        message: message.to_string(),
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(syntax(pos, "empty input"));
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(syntax(pos, "expected '('"));
        }
        pos += 1;
        let mut pts = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b')' && pts.is_empty() {
                pos += 1;
                break;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(syntax(pos, "expected a point"));
            }
            let value: usize = text[start..pos]
                .parse()
                .map_err(|_| syntax(start, "point out of range"))?;
            if value == 0 {
                return Err(syntax(start, "points start at 1"));
            }
            pts.push(value);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b')') => {
                    pos += 1;
                    break;
                }
                _ => return Err(syntax(pos, "expected ',' or ')'")),
            }
        }
        if !pts.is_empty() {
            cycles.push(Cycle::new(pts)?);
        }
        skip_ws(&mut pos);
    }
    Ok(cycles)
}
