//! Landscape operators: affine contractions on landscape space.
//!
//! An operator is a fixed "head" of hat deaths η_1 ≥ … ≥ η_M followed by
//! B-fold repeated, c-scaled copies of the input's levels: level j ≤ M of
//! 𝓛g is the hat on (0, η_j), and level M + (k−1)B + i (for k ≥ 1,
//! 1 ≤ i ≤ B) is t ↦ c·g_{k+1}(t/c). For a well-separated 1-D system the
//! head is the resolution profile δ_1..δ_N and B = N; the fixed point of
//! 𝓛 is then the landscape of the attractor, and it admits a closed form
//! per level.

use crate::error::{Error, Result};
use crate::landscape::{sup_distance, Hat, Landscape, PiecewiseLinear};
use crate::num::Real;

/// Hard stop for iterative fixed-point search; the contraction reaches
/// f64 resolution in under 2000 steps even for scale 0.99.
const MAX_OPERATOR_ITERATIONS: usize = 10_000;

/// Where a resolution profile came from: exact 1-D formulas or
/// measurements on a finite iterate (with the iterate's error bound).
#[derive(Debug, Clone, PartialEq)]
pub enum DeltaSource<T> {
    Exact1d,
    Empirical { iterations: usize, error_bound: T },
}

/// A nonincreasing resolution profile δ_1 ≥ … ≥ δ_N; δ_1 is the attractor
/// diameter and δ_k the smallest ε leaving at most k−1 ε-components.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaProfile<T> {
    deltas: Vec<T>,
    source: DeltaSource<T>,
}

impl<T: Real> DeltaProfile<T> {
    /// Profile computed by the exact 1-D formulas.
    pub fn exact_1d(deltas: Vec<T>) -> Result<Self> {
        Self::validate(&deltas)?;
        Ok(Self {
            deltas,
            source: DeltaSource::Exact1d,
        })
    }

    /// Profile measured on an iterate cloud; `error_bound` is the caller's
    /// bound on how far each entry can sit from the attractor's value.
    pub fn empirical(deltas: Vec<T>, iterations: usize, error_bound: T) -> Result<Self> {
        Self::validate(&deltas)?;
        if !error_bound.is_finite() || error_bound < T::zero() {
            return Err(Error::InvalidOperator(format!(
                "error bound must be finite and nonnegative, got {error_bound}"
            )));
        }
        Ok(Self {
            deltas,
            source: DeltaSource::Empirical {
                iterations,
                error_bound,
            },
        })
    }

    fn validate(deltas: &[T]) -> Result<()> {
        if deltas.is_empty() {
            return Err(Error::InvalidOperator("empty resolution profile".into()));
        }
        for &d in deltas {
            if !d.is_finite() || d < T::zero() {
                return Err(Error::InvalidOperator(format!(
                    "resolutions must be finite and nonnegative, got {d}"
                )));
            }
        }
        for w in deltas.windows(2) {
            if w[1] > w[0] {
                return Err(Error::InvalidOperator(format!(
                    "resolutions must be nonincreasing, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    pub fn deltas(&self) -> &[T] {
        &self.deltas
    }

    pub fn source(&self) -> &DeltaSource<T> {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

/// The result of one operator iteration run.
#[derive(Debug, Clone)]
pub struct OperatorIteration<T> {
    pub landscape: Landscape<T>,
    pub iterations: usize,
}

/// Both sides of the contraction inequality
/// `sup_distance(𝓛g1, 𝓛g2) ≤ c·sup_distance(g1, g2)`.
#[derive(Debug, Clone, Copy)]
pub struct LipschitzBound<T> {
    pub lhs: T,
    pub rhs: T,
}

/// See the module docs for the action; immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeOperator<T> {
    head: Vec<T>,
    block: usize,
    scale: T,
}

impl<T: Real> LandscapeOperator<T> {
    pub fn new(head: Vec<T>, block: usize, scale: T) -> Result<Self> {
        if head.is_empty() {
            return Err(Error::InvalidOperator("empty head".into()));
        }
        for &h in &head {
            if !h.is_finite() || h < T::zero() {
                return Err(Error::InvalidOperator(format!(
                    "head entries must be finite and nonnegative, got {h}"
                )));
            }
        }
        for w in head.windows(2) {
            if w[1] > w[0] {
                return Err(Error::InvalidOperator(format!(
                    "head must be nonincreasing, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if block == 0 {
            return Err(Error::InvalidOperator("block size must be positive".into()));
        }
        if !scale.is_finite() || scale <= T::zero() || scale >= T::one() {
            return Err(Error::InvalidOperator(format!(
                "scale must lie strictly between 0 and 1, got {scale}"
            )));
        }
        Ok(Self { head, block, scale })
    }

    /// Operator of a well-separated system: head = the full resolution
    /// profile, block = the number of maps.
    pub fn wsi(n_maps: usize, scale: T, profile: &DeltaProfile<T>) -> Result<Self> {
        if profile.len() != n_maps {
            return Err(Error::InvalidOperator(format!(
                "profile has {} resolutions but the system has {} maps",
                profile.len(),
                n_maps
            )));
        }
        Self::new(profile.deltas().to_vec(), n_maps, scale)
    }

    pub fn head(&self) -> &[T] {
        &self.head
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    /// First `levels` levels of 𝓛g. Source levels beyond g's
    /// materialization are zero, so the output is exact, not truncated.
    pub fn apply(&self, g: &Landscape<T>, levels: usize) -> Landscape<T> {
        let mut out: Vec<PiecewiseLinear<T>> = Vec::with_capacity(levels);
        for &eta in self.head.iter().take(levels) {
            let hat = Hat::new(T::zero(), eta).expect("validated head entry");
            out.push(hat.polyline());
        }
        let mut k = 1;
        while out.len() < levels {
            let scaled = g
                .level(k + 1)
                .expect("positive level index")
                .scale(self.scale)
                .expect("validated scale");
            let reps = self.block.min(levels - out.len());
            out.extend(std::iter::repeat_n(scaled, reps));
            k += 1;
        }
        Landscape::from_levels(out)
    }

    /// Both sides of the contraction inequality for a pair of landscapes.
    pub fn lipschitz_bound(&self, g1: &Landscape<T>, g2: &Landscape<T>) -> LipschitzBound<T> {
        let sources = g1.level_count().max(g2.level_count());
        let levels = self.head.len() + self.block * sources.saturating_sub(1);
        let lhs = sup_distance(&self.apply(g1, levels), &self.apply(g2, levels));
        let rhs = self.scale * sup_distance(g1, g2);
        LipschitzBound { lhs, rhs }
    }

    /// The unique fixed landscape of 𝓛, materialized to `levels` levels.
    ///
    /// Every level is a single hat born at zero, so for a head of at least
    /// two entries the deaths satisfy an exact recursion: level j > M dies
    /// at c times the death of level ⌈(j−M)/B⌉ + 1, an index always below
    /// j. A one-entry head feeds level 2 from itself, so that case runs
    /// the iteration from zero instead (it stabilizes after two steps).
    pub fn fixed_point(&self, levels: usize) -> Result<Landscape<T>> {
        let m = self.head.len();
        if m < 2 {
            return Ok(self
                .iterate_until(&Landscape::zero(), T::zero(), levels)?
                .landscape);
        }
        let mut deaths: Vec<T> = Vec::with_capacity(levels);
        for j in 1..=levels {
            let d = if j <= m {
                self.head[j - 1]
            } else {
                let k = (j - m).div_ceil(self.block);
                self.scale * deaths[k] // deaths[k] is the death of level k+1
            };
            deaths.push(d);
        }
        let hats = deaths
            .into_iter()
            .map(|d| {
                Hat::new(T::zero(), d)
                    .expect("nonnegative death")
                    .polyline()
            })
            .collect();
        Ok(Landscape::from_levels(hats))
    }

    /// Apply 𝓛 repeatedly from `start` until successive iterates are
    /// within `tol` in landscape distance.
    pub fn iterate(
        &self,
        start: &Landscape<T>,
        tol: T,
        levels: usize,
    ) -> Result<OperatorIteration<T>> {
        if !tol.is_finite() || tol <= T::zero() {
            return Err(Error::InvalidTolerance(format!("{tol}")));
        }
        self.iterate_until(start, tol, levels)
    }

    fn iterate_until(
        &self,
        start: &Landscape<T>,
        tol: T,
        levels: usize,
    ) -> Result<OperatorIteration<T>> {
        let mut current = start.clone();
        for iterations in 1..=MAX_OPERATOR_ITERATIONS {
            let next = self.apply(&current, levels);
            if sup_distance(&next, &current) <= tol {
                return Ok(OperatorIteration {
                    landscape: next,
                    iterations,
                });
            }
            current = next;
        }
        Err(Error::NoConvergence {
            iterations: MAX_OPERATOR_ITERATIONS,
        })
    }
}

/// Closed-form level `j` of the fixed point for a well-separated system
/// with `n_maps ≥ 2` maps: δ_j for j ≤ N, and otherwise the unique pair
/// k ≥ 1, 2 ≤ l ≤ N with (l−1)·N^k < j ≤ l·N^k gives the hat on
/// (0, c^k·δ_l). The power is accumulated by repeated multiplication so
/// the bits agree with the fixed-point recursion.
pub fn closed_form_wsi<T: Real>(
    n_maps: usize,
    scale: T,
    profile: &DeltaProfile<T>,
    level: usize,
) -> Result<Hat<T>> {
    if n_maps < 2 {
        return Err(Error::InvalidOperator(
            "the closed form needs at least two maps".into(),
        ));
    }
    if profile.len() != n_maps {
        return Err(Error::InvalidOperator(format!(
            "profile has {} resolutions but the system has {} maps",
            profile.len(),
            n_maps
        )));
    }
    if !scale.is_finite() || scale <= T::zero() || scale >= T::one() {
        return Err(Error::InvalidOperator(format!(
            "scale must lie strictly between 0 and 1, got {scale}"
        )));
    }
    if level == 0 {
        return Err(Error::ZeroLevel);
    }
    let deltas = profile.deltas();
    if level <= n_maps {
        return Hat::new(T::zero(), deltas[level - 1]);
    }
    // Locate the unique k with N^k < level ≤ N^(k+1).
    let mut power: usize = 1;
    let mut k = 0usize;
    loop {
        match power.checked_mul(n_maps) {
            Some(next) if next < level => {
                power = next;
                k += 1;
            }
            _ => break,
        }
    }
    let l = level.div_ceil(power);
    debug_assert!(k >= 1 && (2..=n_maps).contains(&l));
    debug_assert!((l - 1) * power < level && level <= l * power);
    let mut death = deltas[l - 1];
    for _ in 0..k {
        death = scale * death;
    }
    Hat::new(T::zero(), death)
}
