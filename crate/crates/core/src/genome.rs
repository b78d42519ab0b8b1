//! Genomes on `n` regions as involutions of `1..=2n`.
//!
//! Gene `i` has a tail labelled `2i-1` and a head labelled `2i`. An
//! adjacency between two extremities is a 2-cycle of the genomic
//! permutation and a telomere is a fixed point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::perm::{PermError, Permutation};

/// Default cap on `n` for [`enumerate_genomes`]; |Γ_6| = 140152.
pub const ENUMERATION_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenomeError {
    #[error("gene id 0 is not allowed")]
    ZeroGene,
    #[error("gene {0} occurs more than once")]
    DuplicateGene(usize),
    #[error("gene {0} is missing (ids must be exactly 1..=n)")]
    MissingGene(usize),
    #[error("gene {gene} exceeds the number of regions {n}")]
    GeneOutOfRange { gene: usize, n: usize },
    #[error("chromosome {0} has no genes")]
    EmptyChromosome(usize),
    #[error("genome has no genes")]
    NoGenes,
    #[error("permutation is not an involution")]
    NotInvolution,
    #[error("degree {0} is odd; genomic permutations act on 1..=2n")]
    OddDegree(usize),
    #[error("label {label} lies outside 1..={}", 2 * .n)]
    Range { label: usize, n: usize },
    #[error("refusing to enumerate {n} regions (limit {limit}); pass allow_large to override")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A syntax or validation failure in a genome file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", location_prefix(*.line, *.column))]
pub struct ParseError {
    /// 1-based line, 0 when the problem concerns the file as a whole.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn location_prefix(line: usize, column: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!("line {line}, column {column}: ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Extremity {
    pub gene: usize,
    pub end: End,
}

impl Extremity {
    pub fn tail(gene: usize) -> Self {
        Extremity {
            gene,
            end: End::Tail,
        }
    }

    pub fn head(gene: usize) -> Self {
        Extremity {
            gene,
            end: End::Head,
        }
    }
}

impl fmt::Display for Extremity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = match self.end {
            End::Tail => 't',
            End::Head => 'h',
        };
        write!(f, "{}_{}", self.gene, end)
    }
}

/// The assignment map: tail of gene `i` to `2i-1`, head to `2i`.
pub fn phi(e: Extremity) -> usize {
    match e.end {
        End::Tail => 2 * e.gene - 1,
        End::Head => 2 * e.gene,
    }
}

pub fn phi_inverse(label: usize, n: usize) -> Result<Extremity, GenomeError> {
    if label == 0 || label > 2 * n {
        return Err(GenomeError::Range { label, n });
    }
    let gene = label.div_ceil(2);
    Ok(if label % 2 == 1 {
        Extremity::tail(gene)
    } else {
        Extremity::head(gene)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Linear,
    Circular,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chromosome {
    pub shape: Shape,
    /// Signed gene ids; a negative sign means the gene is read head first.
    pub genes: Vec<i64>,
}

impl Chromosome {
    pub fn linear(genes: Vec<i64>) -> Self {
        Chromosome {
            shape: Shape::Linear,
            genes,
        }
    }

    pub fn circular(genes: Vec<i64>) -> Self {
        Chromosome {
            shape: Shape::Circular,
            genes,
        }
    }
}

// (left, right) extremity labels of a signed gene in reading direction
fn gene_ends(g: i64) -> (usize, usize) {
    let a = g.unsigned_abs() as usize;
    if g > 0 {
        (2 * a - 1, 2 * a)
    } else {
        (2 * a, 2 * a - 1)
    }
}

/// Chromosome-level genome description over gene ids `1..=n_regions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenomeSpec {
    n_regions: usize,
    chromosomes: Vec<Chromosome>,
}

impl GenomeSpec {
    pub fn new(n_regions: usize, chromosomes: Vec<Chromosome>) -> Result<Self, GenomeError> {
        if n_regions == 0 {
            return Err(GenomeError::NoGenes);
        }
        let mut seen = vec![false; n_regions + 1];
        for (idx, c) in chromosomes.iter().enumerate() {
            if c.genes.is_empty() {
                return Err(GenomeError::EmptyChromosome(idx));
            }
            for &g in &c.genes {
                if g == 0 {
                    return Err(GenomeError::ZeroGene);
                }
                let a = g.unsigned_abs() as usize;
                if a > n_regions {
                    return Err(GenomeError::GeneOutOfRange {
                        gene: a,
                        n: n_regions,
                    });
                }
                if std::mem::replace(&mut seen[a], true) {
                    return Err(GenomeError::DuplicateGene(a));
                }
            }
        }
        if let Some(missing) = (1..=n_regions).find(|&a| !seen[a]) {
            return Err(GenomeError::MissingGene(missing));
        }
        Ok(GenomeSpec {
            n_regions,
            chromosomes,
        })
    }

    /// Infers `n` as the total number of genes.
    pub fn from_chromosomes(chromosomes: Vec<Chromosome>) -> Result<Self, GenomeError> {
        let n = chromosomes.iter().map(|c| c.genes.len()).sum();
        Self::new(n, chromosomes)
    }

    pub fn n_regions(&self) -> usize {
        self.n_regions
    }

    pub fn chromosomes(&self) -> &[Chromosome] {
        &self.chromosomes
    }

    pub fn canonical(&self) -> GenomeSpec {
        decode(&encode(self))
    }

    /// Parses the line-oriented genome file format:
    ///
    /// ```text
    /// # comment
    /// L 1 3 2 4
    /// C 5 6
    /// ```
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut chromosomes = Vec::new();
        // first occurrence of each gene id, for duplicate diagnostics
        let mut first_seen = std::collections::HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = tokenize(line);
            let (col, kind) = tokens.next().expect("non-empty line has a token");
            let shape = match kind {
                "L" => Shape::Linear,
                "C" => Shape::Circular,
                other => {
                    return Err(ParseError {
                        line: lineno,
                        column: col,
                        message: format!("expected 'L' or 'C', found '{other}'"),
                    })
                }
            };
            let mut genes = Vec::new();
            for (col, tok) in tokens {
                let g: i64 = tok.parse().map_err(|_| ParseError {
                    line: lineno,
                    column: col,
                    message: format!("'{tok}' is not a signed integer"),
                })?;
                if g == 0 {
                    return Err(ParseError {
                        line: lineno,
                        column: col,
                        message: "gene id 0 is not allowed".into(),
                    });
                }
                let a = g.unsigned_abs();
                if let Some((l, c)) = first_seen.insert(a, (lineno, col)) {
                    return Err(ParseError {
                        line: lineno,
                        column: col,
                        message: format!("gene {a} already appears at line {l}, column {c}"),
                    });
                }
                genes.push(g);
            }
            if genes.is_empty() {
                return Err(ParseError {
                    line: lineno,
                    column: col,
                    message: "chromosome has no genes".into(),
                });
            }
            chromosomes.push(Chromosome { shape, genes });
        }
        GenomeSpec::from_chromosomes(chromosomes).map_err(|e| {
            let at = match &e {
                GenomeError::GeneOutOfRange { gene, .. } => {
                    first_seen.get(&(*gene as u64)).copied()
                }
                _ => None,
            };
            let (line, column) = at.unwrap_or((0, 0));
            ParseError {
                line,
                column,
                message: e.to_string(),
            }
        })
    }
}

fn tokenize(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..idx]));
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(move |(s, tok)| (line[..s].chars().count() + 1, tok))
}

impl fmt::Display for GenomeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.chromosomes {
            f.write_str(match c.shape {
                Shape::Linear => "L",
                Shape::Circular => "C",
            })?;
            for g in &c.genes {
                write!(f, " {g}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// An involution on `1..=2n` describing adjacencies (2-cycles) and
/// telomeres (fixed points).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genome(Permutation);

impl Genome {
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        let g = Genome(Permutation::from_images_unchecked(images));
        debug_assert!(g.0.is_involution() && g.0.degree().is_multiple_of(2));
        g
    }

    /// Parses cycle notation for a genome on `n` regions.
    pub fn parse(text: &str, n: usize) -> Result<Self, GenomeError> {
        validate(Permutation::parse(text, 2 * n)?)
    }

    /// All-telomere genome: `n` single-gene linear chromosomes.
    pub fn identity(n: usize) -> Self {
        Genome(Permutation::identity(2 * n))
    }

    pub fn perm(&self) -> &Permutation {
        &self.0
    }

    pub fn into_perm(self) -> Permutation {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.degree() / 2
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    /// The extremity adjacent to `label`, or `label` itself at a telomere.
    #[inline]
    pub fn partner(&self, label: usize) -> usize {
        self.0.apply(label)
    }

    #[inline]
    pub fn is_telomere(&self, label: usize) -> bool {
        self.0.apply(label) == label
    }

    pub fn telomeres(&self) -> Vec<usize> {
        self.0.fixed_points()
    }

    pub fn adjacencies(&self) -> Vec<(usize, usize)> {
        (1..=self.degree())
            .filter_map(|x| {
                let y = self.partner(x);
                (x < y).then_some((x, y))
            })
            .collect()
    }
}

impl fmt::Display for Genome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Accepts `p` as a genome iff it is an involution of even degree.
pub fn validate(p: Permutation) -> Result<Genome, GenomeError> {
    if p.degree() % 2 == 1 {
        return Err(GenomeError::OddDegree(p.degree()));
    }
    if !p.is_involution() {
        return Err(GenomeError::NotInvolution);
    }
    Ok(Genome(p))
}

pub fn encode(spec: &GenomeSpec) -> Genome {
    let mut images: Vec<usize> = (1..=2 * spec.n_regions).collect();
    let mut join = |x: usize, y: usize| {
        images[x - 1] = y;
        images[y - 1] = x;
    };
    for c in &spec.chromosomes {
        for w in c.genes.windows(2) {
            join(gene_ends(w[0]).1, gene_ends(w[1]).0);
        }
        if c.shape == Shape::Circular {
            let first = gene_ends(c.genes[0]).0;
            let last = gene_ends(*c.genes.last().unwrap()).1;
            join(last, first);
        }
    }
    Genome::from_images_unchecked(images)
}

// orientation-aware order: by id, positive before negative
fn signed_key(g: &i64) -> (u64, bool) {
    (g.unsigned_abs(), *g < 0)
}

fn cmp_readings(a: &[i64], b: &[i64]) -> Ordering {
    a.iter().map(signed_key).cmp(b.iter().map(signed_key))
}

/// Canonical chromosome-level reading of a genome.
///
/// Linear chromosomes come first, then circular ones, each group ordered by
/// smallest gene id. A linear chromosome is read from whichever telomere
/// gives the smaller sequence (ids compared by absolute value, positive
/// before negative); a circular one starts at its smallest gene, positively
/// oriented.
pub fn decode(g: &Genome) -> GenomeSpec {
    let n = g.n();
    let mut visited = vec![false; n + 1];
    let mut linear = Vec::new();
    let mut circular = Vec::new();

    let read_from = |entry: usize, visited: &mut Vec<bool>, stop_at_entry: bool| {
        let mut genes = Vec::new();
        let mut cur = entry;
        loop {
            let gene = cur.div_ceil(2);
            visited[gene] = true;
            let (signed, exit) = if cur % 2 == 1 {
                (gene as i64, 2 * gene)
            } else {
                (-(gene as i64), 2 * gene - 1)
            };
            genes.push(signed);
            let next = g.partner(exit);
            if next == exit || (stop_at_entry && next == entry) {
                break;
            }
            cur = next;
        }
        genes
    };

    for t in g.telomeres() {
        if visited[t.div_ceil(2)] {
            continue;
        }
        let forward = read_from(t, &mut visited, false);
        let backward: Vec<i64> = forward.iter().rev().map(|x| -x).collect();
        let genes = if cmp_readings(&backward, &forward) == Ordering::Less {
            backward
        } else {
            forward
        };
        linear.push(Chromosome::linear(genes));
    }
    for gene in 1..=n {
        if !visited[gene] {
            let genes = read_from(2 * gene - 1, &mut visited, true);
            circular.push(Chromosome::circular(genes));
        }
    }
    let min_id = |c: &Chromosome| c.genes.iter().map(|x| x.unsigned_abs()).min();
    linear.sort_by_key(min_id);
    circular.sort_by_key(min_id);
    linear.extend(circular);
    GenomeSpec {
        n_regions: n,
        chromosomes: linear,
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(2m-1)!!`, the number of perfect matchings on `2m` points; 1 for `m = 0`.
pub fn odd_double_factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * (2 * i - 1))
}

// number of genomes on n regions with exactly 2t telomeres
fn genomes_with_telomere_pairs(n: usize, t: usize) -> BigUint {
    binomial(2 * n, 2 * t) * odd_double_factorial(n - t)
}

/// `|Γ_n| = Σ_t C(2n, 2t) (2t-1)!!`.
pub fn count_genomes(n: usize) -> BigUint {
    (0..=n)
        .map(|t| binomial(2 * n, 2 * t) * odd_double_factorial(t))
        .sum()
}

/// Every genome on `n` regions exactly once, ordered by number of
/// adjacencies and then lexicographically by sorted adjacency list.
pub fn enumerate_genomes(
    n: usize,
    allow_large: bool,
) -> Result<impl Iterator<Item = Genome>, GenomeError> {
    if n > ENUMERATION_LIMIT && !allow_large {
        return Err(GenomeError::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let degree = 2 * n;
    Ok((0..=n).flat_map(move |pairs| {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (1..=degree).collect();
        matchings(degree, 1, pairs, &mut images, &mut out);
        out.into_iter()
    }))
}

fn matchings(
    degree: usize,
    from: usize,
    pairs_left: usize,
    images: &mut [usize],
    out: &mut Vec<Genome>,
) {
    if pairs_left == 0 {
        out.push(Genome::from_images_unchecked(images.to_vec()));
        return;
    }
    for a in from..=degree {
        if images[a - 1] != a {
            continue;
        }
        for b in (a + 1)..=degree {
            if images[b - 1] != b {
                continue;
            }
            images[a - 1] = b;
            images[b - 1] = a;
            matchings(degree, a + 1, pairs_left - 1, images, out);
            images[a - 1] = a;
            images[b - 1] = b;
        }
    }
}

/// Uniform sample from Γ_n, deterministic in `(n, seed)`.
pub fn random_genome(n: usize, seed: u64) -> Genome {
    random_genome_with(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

/// Uniform sample from Γ_n: draw the number of telomere pairs with weight
/// equal to the number of genomes having that many, then place telomeres
/// and adjacencies by a uniform shuffle.
pub fn random_genome_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Genome {
    let total = count_genomes(n);
    let mut ticket = rng.gen_biguint_below(&total);
    let mut telomere_pairs = n;
    for t in 0..=n {
        let w = genomes_with_telomere_pairs(n, t);
        if ticket < w {
            telomere_pairs = t;
            break;
        }
        ticket -= w;
    }
    debug_assert!(!total.is_zero());
    let mut points: Vec<usize> = (1..=2 * n).collect();
    points.shuffle(rng);
    let mut images: Vec<usize> = (1..=2 * n).collect();
    for pair in points[2 * telomere_pairs..].chunks_exact(2) {
        images[pair[0] - 1] = pair[1];
        images[pair[1] - 1] = pair[0];
    }
    Genome::from_images_unchecked(images)
}

/// Uniform fixed-point-free involution on `1..=degree` (`degree` even).
pub fn random_perfect_matching<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Permutation {
    assert!(
        degree.is_multiple_of(2),
        "perfect matchings need an even degree"
    );
    let mut points: Vec<usize> = (1..=degree).collect();
    points.shuffle(rng);
    let mut images: Vec<usize> = (1..=degree).collect();
    for pair in points.chunks_exact(2) {
        images[pair[0] - 1] = pair[1];
        images[pair[1] - 1] = pair[0];
    }
    Permutation::from_images_unchecked(images)
}

/// Involution on `1..=degree` with each point independently left fixed with
/// probability about `fixed_rate`; not uniform, used for property sweeps.
pub fn random_involution<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    fixed_rate: f64,
) -> Permutation {
    let mut points: Vec<usize> = (1..=degree).filter(|_| !rng.gen_bool(fixed_rate)).collect();
    if points.len() % 2 == 1 {
        points.pop();
    }
    points.shuffle(rng);
    let mut images: Vec<usize> = (1..=degree).collect();
    for pair in points.chunks_exact(2) {
        images[pair[0] - 1] = pair[1];
        images[pair[1] - 1] = pair[0];
    }
    Permutation::from_images_unchecked(images)
}
