//! Vertices of the probability and correlation polytopes, saturating sets, and
//! exact rank over prime fields.
//!
//! Rank is computed in Fourier coordinates. Per setting pair, the transform
//! `F(n_a, n_b) = Σ_{o_a,o_b} ω^{n_a·o_a + n_b·o_b} p(o_a, o_b)` is invertible, so it
//! preserves rank, and a deterministic vertex becomes `ω^{n_a·o_a(s_a) + n_b·o_b(s_b)}`.
//! After dropping repeated coordinates (`n_a = n_b = 0` is constant; `n_b = 0`
//! depends on `s_a` only, `n_a = 0` on `s_b` only) the vector has `d_p + 1` entries,
//! every one a power of `ω`.
//!
//! The output shift `o_a → o_a + k`, `o_b → o_b − k` multiplies coordinate
//! `(n_a, n_b)` by `ω^{k(n_a − n_b)}`. For a vertex set closed under that shift the
//! span splits into the blocks `n_a − n_b ≡ j`, so the rank is the sum of block
//! ranks, and each block needs only one vertex per shift orbit. Block 0 without
//! its constant column is exactly the correlation vector.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arith;
use crate::bounds::{best_response_options, normalized_prefixes, LeafVisitor, SearchKernel};
use crate::error::{Error, Result};
use crate::game::{DeterministicStrategy, GameParams};
use crate::symmetry::{normalizing_images, Symmetry, SymmetryGroup};

/// `(d_p, d_c)`: dimensions of the probability and correlation polytopes.
pub fn polytope_dims(params: &GameParams) -> (usize, usize) {
    let d = params.d();
    (d * d * (d - 1) * (d - 1) + 2 * d * (d - 1), d * d * (d - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Probability,
    Correlation,
}

impl Space {
    pub fn as_str(&self) -> &'static str {
        match self {
            Space::Probability => "prob",
            Space::Correlation => "corr",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum VertexData {
    /// 0/1 entries in the layout of `BehaviorTable`.
    Real(Vec<f64>),
    /// Entries indexed `((n − 1)·d + s_a)·d + s_b`, as in `CorrelationTable`.
    Complex(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexVector {
    pub space: Space,
    pub data: VertexData,
    pub source: DeterministicStrategy,
}

impl VertexVector {
    pub fn len(&self) -> usize {
        match &self.data {
            VertexData::Real(v) => v.len(),
            VertexData::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Entries as powers of `ω` (`None` for a zero entry), in storage order.
    pub fn exponents(&self, params: &GameParams) -> Vec<Option<u32>> {
        let d = params.d();
        let (a, b) = (self.source.alice(), self.source.bob());
        match self.space {
            Space::Probability => {
                let mut out = vec![None; d * d * d * d];
                for s_a in 0..d {
                    for s_b in 0..d {
                        out[((s_a * d + s_b) * d + a[s_a] as usize) * d + b[s_b] as usize] = Some(0);
                    }
                }
                out
            }
            Space::Correlation => {
                let mut out = Vec::with_capacity(d * d * (d - 1));
                for n in 1..d {
                    for s_a in 0..d {
                        for s_b in 0..d {
                            out.push(Some((n * (a[s_a] as usize + b[s_b] as usize) % d) as u32));
                        }
                    }
                }
                out
            }
        }
    }
}

pub fn embed_vertex(params: &GameParams, strategy: &DeterministicStrategy, space: Space) -> VertexVector {
    let d = params.d();
    let (a, b) = (strategy.alice(), strategy.bob());
    let data = match space {
        Space::Probability => {
            let mut v = vec![0.0; d * d * d * d];
            for s_a in 0..d {
                for s_b in 0..d {
                    v[((s_a * d + s_b) * d + a[s_a] as usize) * d + b[s_b] as usize] = 1.0;
                }
            }
            VertexData::Real(v)
        }
        Space::Correlation => {
            let w = params.omega_powers();
            let mut v = Vec::with_capacity(d * d * (d - 1));
            for n in 1..d {
                for s_a in 0..d {
                    for s_b in 0..d {
                        v.push(w[n * (a[s_a] as usize + b[s_b] as usize) % d]);
                    }
                }
            }
            VertexData::Complex(v)
        }
    };
    VertexVector {
        space,
        data,
        source: strategy.clone(),
    }
}

/// All images of `strategy` under the symmetry group.
pub fn orbit_expand(params: &GameParams, strategy: &DeterministicStrategy) -> BTreeSet<DeterministicStrategy> {
    SymmetryGroup::new(params).orbit(strategy)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    OrbitSampled,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::OrbitSampled => "orbit_sampled",
        }
    }
}

/// Collects normalized Alice strategies at `target` and records whether any
/// candidate exceeds it.
struct SaturatingVisitor {
    target: usize,
    found: Vec<Vec<u8>>,
    exceeded: bool,
}

impl LeafVisitor for SaturatingVisitor {
    #[inline]
    fn leaf(&mut self, alice: &[u8], value: usize) {
        if value == self.target {
            self.found.push(alice.to_vec());
        } else if value > self.target {
            self.exceeded = true;
        }
    }
}

/// Every strategy with `zero_count = delta`, where `delta` must be `Δmax`.
///
/// Normalized Alice strategies at `delta` are enumerated exactly; each is paired
/// with every tie-optimal Bob (a saturating strategy's Bob is necessarily a best
/// response) and expanded by the normalizing symmetries, which reach every
/// strategy. Fails with `LimitExceeded` past `limit` strategies and with
/// `Precondition` when some strategy beats `delta`.
pub fn enumerate_saturating_exhaustive(params: &GameParams, delta: usize, limit: usize) -> Result<BTreeSet<DeterministicStrategy>> {
    let mut kernel = SearchKernel::new(params);
    let mut visitor = SaturatingVisitor {
        target: delta,
        found: Vec::new(),
        exceeded: false,
    };
    for prefix in normalized_prefixes(params, 3) {
        kernel.run(&prefix, &mut visitor);
    }
    if visitor.exceeded {
        return Err(Error::Precondition("delta is below the classical maximum"));
    }
    let mut out = BTreeSet::new();
    for alice in &visitor.found {
        let (options, zeros) = best_response_options(params, alice);
        debug_assert_eq!(zeros, delta);
        for bob in cartesian(&options) {
            let s = DeterministicStrategy::from_parts(alice.clone(), bob);
            for image in normalizing_images(params, &s) {
                out.insert(image);
            }
            if out.len() > limit {
                return Err(Error::LimitExceeded(limit));
            }
        }
    }
    Ok(out)
}

/// Union of the full symmetry orbits of `seeds`, each of which must have
/// `zero_count = delta`.
pub fn orbit_sampled_set(params: &GameParams, delta: usize, seeds: &[DeterministicStrategy], limit: usize) -> Result<BTreeSet<DeterministicStrategy>> {
    if seeds.is_empty() {
        return Err(Error::EmptySet);
    }
    let group = SymmetryGroup::new(params);
    let mut out = BTreeSet::new();
    for seed in seeds {
        if seed.zero_count() != delta {
            return Err(Error::Precondition("seed does not saturate delta"));
        }
        if out.contains(seed) {
            continue;
        }
        out.extend(group.orbit(seed));
        if out.len() > limit {
            return Err(Error::LimitExceeded(limit));
        }
    }
    Ok(out)
}

fn cartesian(options: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::with_capacity(options.len())];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&o| {
                    let mut p = prefix.clone();
                    p.push(o);
                    p
                })
            })
            .collect();
    }
    out
}

/// Columns of one Fourier block; every entry of a vertex row is `ω^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockLayout {
    pub d: usize,
    /// `n_a − n_b mod d`
    pub block: usize,
    /// Whether block 0 keeps its constant column (probability side).
    pub constant: bool,
}

impl BlockLayout {
    pub fn columns(&self) -> usize {
        let d = self.d;
        if self.block == 0 {
            self.constant as usize + d * d * (d - 1)
        } else {
            2 * d + (d - 2) * d * d
        }
    }

    /// Writes the exponents of `ω` for the vertex `(alice, bob)` into `out`.
    pub fn exponents(&self, alice: &[u8], bob: &[u8], out: &mut Vec<u32>) {
        let d = self.d;
        let j = self.block;
        out.clear();
        if j == 0 {
            if self.constant {
                out.push(0);
            }
            for n in 1..d {
                for &a in alice {
                    for &b in bob {
                        out.push((n * (a as usize + b as usize) % d) as u32);
                    }
                }
            }
            return;
        }
        out.extend(alice.iter().map(|&a| (j * a as usize % d) as u32));
        out.extend(bob.iter().map(|&b| ((d - j) * b as usize % d) as u32));
        for n_a in 1..d {
            if n_a == j {
                continue;
            }
            let n_b = (n_a + d - j) % d;
            for &a in alice {
                for &b in bob {
                    out.push(((n_a * a as usize + n_b * b as usize) % d) as u32);
                }
            }
        }
    }
}

/// The blocks whose ranks add up to the rank of a shift-closed vertex set.
pub fn block_layouts(params: &GameParams, space: Space) -> Vec<BlockLayout> {
    let d = params.d();
    match space {
        Space::Probability => (0..d)
            .map(|block| BlockLayout {
                d,
                block,
                constant: true,
            })
            .collect(),
        Space::Correlation => vec![BlockLayout {
            d,
            block: 0,
            constant: false,
        }],
    }
}

/// One layout per orbit of the unit group acting on blocks, with the orbit size.
///
/// Unit scaling `Scale(u)` maps the rows of block `j` onto those of block `u·j`
/// up to a column permutation, so a scaling-closed vertex set has equal rank on
/// `j` and `u·j`. Representatives are the divisors `g` of `d` (block `g` stands
/// for every `j` with `gcd(j, d) = g`).
pub fn block_plan(params: &GameParams, space: Space) -> Vec<(BlockLayout, usize)> {
    let d = params.d();
    match space {
        Space::Correlation => vec![(block_layouts(params, space)[0], 1)],
        Space::Probability => {
            let mut plan = vec![(
                BlockLayout {
                    d,
                    block: 0,
                    constant: true,
                },
                1,
            )];
            for g in (1..d).filter(|g| d.is_multiple_of(*g)) {
                let count = (1..d).filter(|&j| arith::gcd(j as u64, d as u64) as usize == g).count();
                plan.push((
                    BlockLayout {
                        d,
                        block: g,
                        constant: true,
                    },
                    count,
                ));
            }
            plan
        }
    }
}

/// Whether `set` is closed under every unit scaling.
pub fn closed_under_scaling(params: &GameParams, set: &BTreeSet<DeterministicStrategy>) -> bool {
    let units: Vec<usize> = params.units().into_iter().filter(|&u| u != 1).collect();
    set.iter().all(|s| units.iter().all(|&u| set.contains(&Symmetry::Scale(u).apply(params, s))))
}

/// One strategy per output-shift orbit (the one with `o_a(0) = 0`). Fails when
/// `set` is not closed under the output shift, which the block split needs.
pub fn shift_representatives(params: &GameParams, set: &BTreeSet<DeterministicStrategy>) -> Result<Vec<DeterministicStrategy>> {
    let d = params.d();
    let reps: Vec<DeterministicStrategy> = set.iter().filter(|s| s.alice()[0] == 0).cloned().collect();
    if reps.len() * d != set.len() {
        return Err(Error::Precondition("vertex set is not closed under the output shift"));
    }
    for s in reps.iter().take(8) {
        if !set.contains(&Symmetry::OutputShift(1).apply(params, s)) {
            return Err(Error::Precondition("vertex set is not closed under the output shift"));
        }
    }
    Ok(reps)
}

/// Arithmetic modulo a prime `p < 2^31` with Barrett reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    barrett: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..(1 << 31)).contains(&p) || !arith::is_prime(p) {
            return Err(Error::BadModulus { p, d: 0 });
        }
        Ok(Self {
            p,
            barrett: u64::MAX / p,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// `x mod p` for `x < 2^63`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        arith::pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Smallest prime `p > 2^30` with `p ≡ 1 (mod d)`.
pub fn select_prime(d: usize) -> u64 {
    let d = d as u64;
    let base = 1u64 << 30;
    let mut p = base + 1 + (d - base % d) % d;
    if p <= base {
        p += d;
    }
    while !arith::is_prime(p) {
        p += d;
    }
    p
}

/// An element of multiplicative order exactly `d` modulo `p`.
pub fn order_d_element(p: u64, d: usize) -> Result<u64> {
    let d64 = d as u64;
    if !(p - 1).is_multiple_of(d64) {
        return Err(Error::BadModulus { p, d });
    }
    let factors = arith::prime_factors(d64);
    for g in 2..p.min(10_000) {
        let x = arith::pow_mod(g, (p - 1) / d64, p);
        if factors.iter().all(|&q| arith::pow_mod(x, d64 / q, p) != 1) {
            return Ok(x);
        }
    }
    Err(Error::BadModulus { p, d })
}

/// Row echelon form over `GF(p)`, grown one row at a time.
#[derive(Debug, Clone)]
pub struct IncrementalRank {
    field: PrimeField,
    cols: usize,
    pivots: Vec<(usize, Vec<u64>)>,
}

impl IncrementalRank {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        Self {
            field,
            cols,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.cols
    }

    /// Adds a row (entries already reduced mod `p`); returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.cols);
        let f = self.field;
        let p = f.modulus();
        for (col, piv) in &self.pivots {
            let c = row[*col];
            if c == 0 {
                continue;
            }
            let m = p - c;
            for (r, &v) in row[*col..].iter_mut().zip(&piv[*col..]) {
                *r = f.reduce(*r + m * v);
            }
        }
        match row.iter().position(|&x| x != 0) {
            None => false,
            Some(col) => {
                let inv = f.inv(row[col]);
                for r in &mut row[col..] {
                    *r = f.mul(*r, inv);
                }
                self.pivots.push((col, row));
                true
            }
        }
    }
}

/// Rank over `GF(p)` of explicit vertex vectors in their ambient space. Probability
/// entries reduce to 0/1; `ω` maps to an element of order `d`.
pub fn rank_modular(params: &GameParams, vectors: &[VertexVector], p: u64) -> Result<usize> {
    let first = vectors.first().ok_or(Error::EmptySet)?;
    if vectors.iter().any(|v| v.space != first.space) {
        return Err(Error::InconsistentSpace);
    }
    let field = PrimeField::new(p)?;
    let w = order_d_element(p, params.d())?;
    let powers: Vec<u64> = (0..params.d() as u64).map(|e| field.pow(w, e)).collect();
    let mut ech = IncrementalRank::new(field, first.len());
    for v in vectors {
        let row = v.exponents(params).into_iter().map(|e| e.map_or(0, |e| powers[e as usize])).collect();
        ech.insert(row);
        if ech.is_full() {
            break;
        }
    }
    Ok(ech.rank())
}

/// Per-block ranks of a saturating set in Fourier coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRanks {
    pub blocks: Vec<(usize, usize)>,
    pub total: usize,
}

/// Exact rank over `GF(p)` of the vertex set `set` via the Fourier block split.
/// On the probability side `set` must be closed under the output shift; if it
/// is also closed under unit scaling only one block per unit orbit is reduced.
/// Each block stops early once it reaches full column rank.
pub fn saturating_rank_modular(params: &GameParams, space: Space, set: &BTreeSet<DeterministicStrategy>, p: u64) -> Result<BlockRanks> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let reps = match space {
        Space::Probability => shift_representatives(params, set)?,
        Space::Correlation => set.iter().cloned().collect(),
    };
    let plan: Vec<(BlockLayout, usize)> = if space == Space::Probability && closed_under_scaling(params, set) {
        block_plan(params, space)
    } else {
        block_layouts(params, space).into_iter().map(|b| (b, 1)).collect()
    };
    let field = PrimeField::new(p)?;
    let w = order_d_element(p, params.d())?;
    let powers: Vec<u64> = (0..params.d() as u64).map(|e| field.pow(w, e)).collect();
    let mut blocks = Vec::new();
    let mut total = 0;
    let mut buf = Vec::new();
    for (layout, multiplicity) in plan {
        let mut ech = IncrementalRank::new(field, layout.columns());
        for s in &reps {
            layout.exponents(s.alice(), s.bob(), &mut buf);
            ech.insert(buf.iter().map(|&e| powers[e as usize]).collect());
            if ech.is_full() {
                break;
            }
        }
        blocks.push((layout.block, ech.rank()));
        total += multiplicity * ech.rank();
    }
    Ok(BlockRanks { blocks, total })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Tight,
    NonTight,
    RankLowerBound,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Tight => "tight",
            Verdict::NonTight => "non_tight",
            Verdict::RankLowerBound => "rank_lower_bound",
        }
    }

    /// Tight iff the rank reaches the dimension; a shortfall only proves
    /// non-tightness when the vertex set is complete.
    pub fn from_rank(rank: usize, dimension: usize, method: Method) -> Self {
        if rank == dimension {
            Verdict::Tight
        } else if method == Method::Exhaustive {
            Verdict::NonTight
        } else {
            Verdict::RankLowerBound
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TightnessReport {
    pub d: usize,
    pub side: Space,
    pub dimension: usize,
    pub rank: usize,
    pub verdict: Verdict,
    pub vertex_count: usize,
    pub method: Method,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::exact_delta_max_sequential;
    use crate::game::zero_count_of;

    fn params(d: usize) -> GameParams {
        GameParams::new(d).unwrap()
    }

    fn brute_saturating(d: usize) -> (usize, BTreeSet<DeterministicStrategy>) {
        let total = (d as u64).pow(2 * d as u32);
        let mut best = 0;
        let mut set = BTreeSet::new();
        for code in 0..total {
            let mut c = code;
            let mut v = vec![0u8; 2 * d];
            for x in v.iter_mut() {
                *x = (c % d as u64) as u8;
                c /= d as u64;
            }
            let z = zero_count_of(&v[..d], &v[d..]);
            if z > best {
                best = z;
                set.clear();
            }
            if z == best {
                set.insert(DeterministicStrategy::from_parts(v[..d].to_vec(), v[d..].to_vec()));
            }
        }
        (best, set)
    }

    #[test]
    fn dimensions() {
        assert_eq!(polytope_dims(&params(3)), (48, 18));
        assert_eq!(polytope_dims(&params(5)), (440, 100));
        assert_eq!(polytope_dims(&params(13)), (24648, 2028));
        for d in 2..=13 {
            let p = params(d);
            let cols: usize = block_layouts(&p, Space::Probability).iter().map(|b| b.columns()).sum();
            assert_eq!(cols, polytope_dims(&p).0 + 1);
            assert_eq!(block_layouts(&p, Space::Correlation)[0].columns(), polytope_dims(&p).1);
        }
    }

    #[test]
    fn embeddings() {
        let p = params(3);
        let s = DeterministicStrategy::from_parts(vec![0, 0, 0], vec![0, 0, 0]);
        match embed_vertex(&p, &s, Space::Correlation).data {
            VertexData::Complex(v) => assert!(v.iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15)),
            _ => unreachable!(),
        }
        let s = DeterministicStrategy::from_parts(vec![1, 2, 0], vec![2, 2, 1]);
        match embed_vertex(&p, &s, Space::Probability).data {
            VertexData::Real(v) => assert_eq!(v.iter().sum::<f64>(), 9.0),
            _ => unreachable!(),
        }
    }

    #[test]
    fn saturating_sets_match_brute_force() {
        for d in 2..=4 {
            let (best, brute) = brute_saturating(d);
            let set = enumerate_saturating_exhaustive(&params(d), best, 1 << 20).unwrap();
            assert_eq!(set, brute, "d={d}");
        }
        assert_eq!(brute_saturating(2).1.len(), 8);
        assert!(enumerate_saturating_exhaustive(&params(4), 9, 1 << 20).is_err());
        assert!(matches!(enumerate_saturating_exhaustive(&params(4), 10, 5), Err(Error::LimitExceeded(5))));
    }

    #[test]
    fn prime_selection() {
        let p5 = select_prime(5);
        assert!(p5 > 1 << 30 && p5 % 5 == 1 && arith::is_prime(p5));
        for d in 2..=13 {
            let p = select_prime(d);
            let w = order_d_element(p, d).unwrap();
            assert_eq!(arith::pow_mod(w, d as u64, p), 1);
        }
        assert!(order_d_element((1 << 31) - 1, 5).is_err());
    }

    #[test]
    fn block_rank_matches_ambient_rank() {
        for d in [3, 4] {
            let p = params(d);
            let delta = exact_delta_max_sequential(&p).value;
            let set = enumerate_saturating_exhaustive(&p, delta, 1 << 20).unwrap();
            let prime = select_prime(d);
            for space in [Space::Probability, Space::Correlation] {
                let vectors: Vec<VertexVector> = set.iter().map(|s| embed_vertex(&p, s, space)).collect();
                let ambient = rank_modular(&p, &vectors, prime).unwrap();
                let blocks = saturating_rank_modular(&p, space, &set, prime).unwrap();
                assert_eq!(ambient, blocks.total, "d={d} {space:?}");
            }
        }
    }

    #[test]
    fn scaling_reduction_matches_every_block() {
        for d in [4, 5, 6] {
            let p = params(d);
            let delta = exact_delta_max_sequential(&p).value;
            let set = enumerate_saturating_exhaustive(&p, delta, 1 << 20).unwrap();
            assert!(closed_under_scaling(&p, &set));
            let prime = select_prime(d);
            let field = PrimeField::new(prime).unwrap();
            let w = order_d_element(prime, d).unwrap();
            let reps = shift_representatives(&p, &set).unwrap();
            let mut buf = Vec::new();
            let mut total = 0;
            for layout in block_layouts(&p, Space::Probability) {
                let mut ech = IncrementalRank::new(field, layout.columns());
                for s in &reps {
                    layout.exponents(s.alice(), s.bob(), &mut buf);
                    ech.insert(buf.iter().map(|&e| field.pow(w, e as u64)).collect());
                }
                total += ech.rank();
            }
            assert_eq!(saturating_rank_modular(&p, Space::Probability, &set, prime).unwrap().total, total, "d={d}");
            let plan: usize = block_plan(&p, Space::Probability).iter().map(|b| b.1).sum();
            assert_eq!(plan, d);
        }
    }

    #[test]
    fn small_ranks() {
        let expect = [(2, 8, 4), (3, 18, 6), (4, 32, 8)];
        for (d, rp, rc) in expect {
            let p = params(d);
            let delta = exact_delta_max_sequential(&p).value;
            let set = enumerate_saturating_exhaustive(&p, delta, 1 << 20).unwrap();
            let prime = select_prime(d);
            assert_eq!(saturating_rank_modular(&p, Space::Probability, &set, prime).unwrap().total, rp);
            assert_eq!(saturating_rank_modular(&p, Space::Correlation, &set, prime).unwrap().total, rc);
        }
    }

    #[test]
    fn rank_edge_cases() {
        let p = params(3);
        let s = DeterministicStrategy::from_parts(vec![0, 0, 0], vec![0, 0, 0]);
        let v = embed_vertex(&p, &s, Space::Correlation);
        let prime = select_prime(3);
        assert_eq!(rank_modular(&p, &[v.clone(), v.clone()], prime).unwrap(), 1);
        assert!(rank_modular(&p, &[], prime).is_err());
        let w = embed_vertex(&p, &s, Space::Probability);
        assert!(matches!(rank_modular(&p, &[v, w], prime), Err(Error::InconsistentSpace)));
        let mut one = BTreeSet::new();
        one.insert(s);
        assert!(saturating_rank_modular(&p, Space::Probability, &one, prime).is_err());
    }

    #[test]
    fn orbit_sampling() {
        let p = params(3);
        let r = exact_delta_max_sequential(&p);
        let set = orbit_sampled_set(&p, r.value, core::slice::from_ref(&r.witness), 1 << 20).unwrap();
        assert!(set.contains(&r.witness));
        assert!(set.iter().all(|s| s.zero_count() == 6));
        assert!(shift_representatives(&p, &set).is_ok());
        assert!(orbit_sampled_set(&p, 5, &[r.witness], 1 << 20).is_err());
    }

    #[test]
    fn verdicts() {
        assert_eq!(Verdict::from_rank(18, 18, Method::OrbitSampled), Verdict::Tight);
        assert_eq!(Verdict::from_rank(6, 18, Method::Exhaustive), Verdict::NonTight);
        assert_eq!(Verdict::from_rank(6, 18, Method::OrbitSampled), Verdict::RankLowerBound);
    }
}
