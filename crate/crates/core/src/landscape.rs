//! Persistence landscapes: the k-th largest tent functions of a diagram.
//!
//! Each diagram pair (a, b) contributes the hat `t -> max(0, min(t - a,
//! b - t))`, a triangle of height (b - a)/2 peaking at the midpoint. Level
//! k of the landscape is the pointwise k-th largest hat value. Landscapes
//! of degree-0 diagrams (all births zero) are nested hats, so level k is
//! simply the hat of the k-th largest death; general diagrams go through an
//! exact sweep over hat breakpoints and pairwise crossing abscissas.

use std::collections::BTreeMap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::num::{cast, Real};
use crate::persistence::PersistenceDiagram;

/// The tent function of one birth/death pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hat<T> {
    birth: T,
    death: T,
}

impl<T: Real> Hat<T> {
    pub fn new(birth: T, death: T) -> Result<Self> {
        if !birth.is_finite() || !death.is_finite() {
            return Err(Error::InvalidDiagram("non-finite hat".into()));
        }
        if death < birth {
            return Err(Error::InvalidDiagram(format!(
                "death {death} precedes birth {birth}"
            )));
        }
        Ok(Self { birth, death })
    }

    pub fn birth(&self) -> T {
        self.birth
    }

    pub fn death(&self) -> T {
        self.death
    }

    /// `max(0, min(t - birth, death - t))`.
    pub fn eval(&self, t: T) -> T {
        (t - self.birth).min(self.death - t).max(T::zero())
    }

    /// True for hats of zero persistence, which are identically zero.
    pub fn is_degenerate(&self) -> bool {
        self.death == self.birth
    }

    /// The hat as a canonical three-breakpoint polyline (empty if
    /// degenerate).
    pub fn polyline(&self) -> PiecewiseLinear<T> {
        if self.is_degenerate() {
            return PiecewiseLinear::zero();
        }
        let mid = (self.birth + self.death) / cast(2.0);
        PiecewiseLinear {
            points: vec![
                (self.birth, T::zero()),
                (mid, self.eval(mid)),
                (self.death, T::zero()),
            ],
        }
    }
}

/// A continuous piecewise-linear function with compact support: zero
/// outside its breakpoints, interpolated between them. The zero function is
/// the empty breakpoint list; otherwise the first and last values are zero
/// and abscissas increase strictly.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear<T> {
    points: Vec<(T, T)>,
}

impl<T: Real> PiecewiseLinear<T> {
    pub fn zero() -> Self {
        Self { points: Vec::new() }
    }

    pub fn from_breakpoints(points: Vec<(T, T)>) -> Result<Self> {
        for &(t, v) in &points {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::InvalidPiecewiseLinear(
                    "non-finite breakpoint".into(),
                ));
            }
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidPiecewiseLinear(format!(
                    "abscissas must increase strictly, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        if points.len() == 1 {
            return if points[0].1 == T::zero() {
                Ok(Self::zero())
            } else {
                Err(Error::InvalidPiecewiseLinear(
                    "an isolated breakpoint must have value zero".into(),
                ))
            };
        }
        if let (Some(first), Some(last)) = (points.first(), points.last()) {
            if first.1 != T::zero() || last.1 != T::zero() {
                return Err(Error::InvalidPiecewiseLinear(
                    "support endpoints must have value zero".into(),
                ));
            }
        }
        Ok(Self { points })
    }

    pub fn breakpoints(&self) -> &[(T, T)] {
        &self.points
    }

    pub fn is_zero(&self) -> bool {
        self.points.iter().all(|&(_, v)| v == T::zero())
    }

    pub fn eval(&self, t: T) -> T {
        if self.points.is_empty() {
            return T::zero();
        }
        let idx = self.points.partition_point(|&(ti, _)| ti < t);
        if idx == self.points.len() {
            return T::zero();
        }
        let (t1, v1) = self.points[idx];
        if t1 == t {
            return v1;
        }
        if idx == 0 {
            return T::zero();
        }
        let (t0, v0) = self.points[idx - 1];
        v0 + (t - t0) * ((v1 - v0) / (t1 - t0))
    }

    /// Largest absolute value; attained at a breakpoint.
    pub fn sup_norm(&self) -> T {
        self.points
            .iter()
            .fold(T::zero(), |acc, &(_, v)| acc.max(v.abs()))
    }

    /// Rescale domain and range by the same positive factor.
    pub fn scale(&self, factor: T) -> Result<Self> {
        if !factor.is_finite() || factor <= T::zero() {
            return Err(Error::InvalidScale(format!("{factor}")));
        }
        Ok(Self {
            points: self
                .points
                .iter()
                .map(|&(t, v)| (factor * t, factor * v))
                .collect(),
        })
    }
}

/// Exact supremum of `|f - g|`: the difference is piecewise linear with
/// kinks only at breakpoints of either input, so scanning those suffices.
pub fn sup_diff<T: Real>(f: &PiecewiseLinear<T>, g: &PiecewiseLinear<T>) -> T {
    let mut ts: Vec<T> = f.points.iter().chain(&g.points).map(|&(t, _)| t).collect();
    ts.sort_by(|a, b| a.partial_cmp(b).expect("finite abscissas"));
    ts.dedup();
    ts.into_iter()
        .fold(T::zero(), |acc, t| acc.max((f.eval(t) - g.eval(t)).abs()))
}

/// A persistence landscape: level functions indexed from 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape<T> {
    levels: Vec<PiecewiseLinear<T>>,
}

impl<T: Real> Landscape<T> {
    pub fn zero() -> Self {
        Self { levels: Vec::new() }
    }

    /// Assemble from explicit level functions; trailing zero levels are
    /// trimmed so the representation is canonical.
    pub fn from_levels(mut levels: Vec<PiecewiseLinear<T>>) -> Self {
        while levels.last().is_some_and(PiecewiseLinear::is_zero) {
            levels.pop();
        }
        Self { levels }
    }

    /// Landscape of a diagram. Diagrams whose classes are all born at zero
    /// (every degree-0 diagram) take the nested-hat fast path; anything
    /// else goes through the general sweep.
    pub fn from_diagram(diagram: &PersistenceDiagram<T>) -> Self {
        if diagram.births_all_zero() {
            let mut deaths: Vec<T> = Vec::with_capacity(diagram.total_multiplicity());
            for p in diagram.pairs() {
                deaths.extend(std::iter::repeat_n(p.death, p.multiplicity));
            }
            deaths.sort_by(|a, b| b.partial_cmp(a).expect("finite deaths"));
            let levels = deaths
                .into_iter()
                .take_while(|&d| d > T::zero())
                .map(|d| {
                    Hat {
                        birth: T::zero(),
                        death: d,
                    }
                    .polyline()
                })
                .collect();
            return Self::from_levels(levels);
        }
        let mut hats = Vec::with_capacity(diagram.total_multiplicity());
        for p in diagram.pairs() {
            let hat = Hat {
                birth: p.birth,
                death: p.death,
            };
            if !hat.is_degenerate() {
                hats.extend(std::iter::repeat_n(hat, p.multiplicity));
            }
        }
        Self::from_hats(&hats)
    }

    /// General landscape construction: the pointwise k-th largest of the
    /// given hats, exactly. Nodes are all hat breakpoints plus all pairwise
    /// crossing abscissas of up- and down-slopes; between consecutive nodes
    /// no two hats change order, so sampling the nodes captures the
    /// function. Runs in O(m^3) for m hats; the diagram entry point above
    /// routes degree-0 inputs away from this.
    pub fn from_hats(hats: &[Hat<T>]) -> Self {
        let hats: Vec<Hat<T>> = hats
            .iter()
            .filter(|h| !h.is_degenerate())
            .copied()
            .collect();
        if hats.is_empty() {
            return Self::zero();
        }
        let two = cast::<T>(2.0);
        let mut nodes: Vec<T> = Vec::with_capacity(3 * hats.len() + hats.len() * hats.len());
        for h in &hats {
            nodes.push(h.birth);
            nodes.push((h.birth + h.death) / two);
            nodes.push(h.death);
        }
        for i in 0..hats.len() {
            for j in (i + 1)..hats.len() {
                nodes.push((hats[i].birth + hats[j].death) / two);
                nodes.push((hats[j].birth + hats[i].death) / two);
            }
        }
        nodes.sort_by(|a, b| a.partial_cmp(b).expect("finite nodes"));
        nodes.dedup();

        // Node-major table of hat values, each row sorted descending.
        let table: Vec<Vec<T>> = nodes
            .iter()
            .map(|&t| {
                let mut vals: Vec<T> = hats.iter().map(|h| h.eval(t)).collect();
                vals.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
                vals
            })
            .collect();

        let mut levels = Vec::new();
        for k in 0..hats.len() {
            let first = match table.iter().position(|row| row[k] > T::zero()) {
                Some(i) => i,
                None => break, // deeper levels are pointwise smaller
            };
            let last = table
                .iter()
                .rposition(|row| row[k] > T::zero())
                .expect("a positive value exists");
            let pts: Vec<(T, T)> = (first - 1..=last + 1)
                .map(|i| (nodes[i], table[i][k]))
                .collect();
            levels.push(PiecewiseLinear {
                points: prune_collinear(pts),
            });
        }
        Self::from_levels(levels)
    }

    pub fn levels(&self) -> &[PiecewiseLinear<T>] {
        &self.levels
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Level `k` (1-indexed); levels beyond the materialized ones are zero.
    pub fn level(&self, k: usize) -> Result<&PiecewiseLinear<T>> {
        if k == 0 {
            return Err(Error::ZeroLevel);
        }
        Ok(self.levels.get(k - 1).unwrap_or(Self::zero_level_ref()))
    }

    fn zero_level_ref() -> &'static PiecewiseLinear<T> {
        // A zero function carries no data, so a single leaked instance per
        // scalar type serves every query past the materialized levels.
        use std::any::TypeId;
        use std::collections::HashMap;
        use std::sync::{Mutex, OnceLock};
        static CACHE: OnceLock<Mutex<HashMap<TypeId, &'static (dyn std::any::Any + Send + Sync)>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = cache.lock().expect("zero-level cache");
        let entry = map.entry(TypeId::of::<T>()).or_insert_with(|| {
            Box::leak(Box::new(PiecewiseLinear::<T>::zero()))
                as &'static (dyn std::any::Any + Send + Sync)
        });
        entry
            .downcast_ref::<PiecewiseLinear<T>>()
            .expect("cache holds the right type")
    }

    /// Value of level `k` at `t`; zero beyond the materialized levels.
    pub fn evaluate(&self, k: usize, t: T) -> Result<T> {
        Ok(self.level(k)?.eval(t))
    }

    /// Keep at most the first `levels` level functions.
    pub fn truncate(&self, levels: usize) -> Self {
        Self::from_levels(self.levels.iter().take(levels).cloned().collect())
    }

    /// Rescale every level's domain and range by `factor`.
    pub fn scale(&self, factor: T) -> Result<Self> {
        let levels = self
            .levels
            .iter()
            .map(|l| l.scale(factor))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { levels })
    }

    /// Supremum over levels of each level's sup norm.
    pub fn sup_norm(&self) -> T {
        self.levels
            .iter()
            .fold(T::zero(), |acc, l| acc.max(l.sup_norm()))
    }

    /// Write as CSV with header `level,t,value`: one row per breakpoint,
    /// grouped by level in breakpoint order. Zero levels produce no rows.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "level,t,value")?;
        for (i, level) in self.levels.iter().enumerate() {
            for &(t, v) in level.breakpoints() {
                writeln!(w, "{},{},{}", i + 1, t, v)?;
            }
        }
        Ok(())
    }

    /// Parse the CSV format produced by [`Landscape::write_csv`]. Levels
    /// absent from the file are zero.
    pub fn read_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == "level,t,value" => {}
            other => {
                return Err(Error::Csv {
                    line: 1,
                    message: format!(
                        "expected header `level,t,value`, got {:?}",
                        other.map(|(_, h)| h).unwrap_or("")
                    ),
                })
            }
        }
        let mut groups: BTreeMap<usize, Vec<(T, T)>> = BTreeMap::new();
        for (i, raw) in lines {
            let line = i + 1;
            let row = raw.trim();
            if row.is_empty() {
                continue;
            }
            let mut fields = row.split(',');
            let mut next = |what: &str| {
                fields.next().ok_or_else(|| Error::Csv {
                    line,
                    message: format!("missing {what}"),
                })
            };
            let level: usize = next("level")?.trim().parse().map_err(|_| Error::Csv {
                line,
                message: "level must be a positive integer".into(),
            })?;
            if level == 0 {
                return Err(Error::Csv {
                    line,
                    message: "level indices start at 1".into(),
                });
            }
            let t: T = next("t")?.trim().parse().map_err(|_| Error::Csv {
                line,
                message: "unreadable abscissa".into(),
            })?;
            let v: T = next("value")?.trim().parse().map_err(|_| Error::Csv {
                line,
                message: "unreadable value".into(),
            })?;
            groups.entry(level).or_default().push((t, v));
        }
        let max_level = groups.keys().next_back().copied().unwrap_or(0);
        let mut levels = Vec::with_capacity(max_level);
        for k in 1..=max_level {
            let pl = match groups.remove(&k) {
                Some(pts) => PiecewiseLinear::from_breakpoints(pts).map_err(|e| Error::Csv {
                    line: 0,
                    message: e.to_string(),
                })?,
                None => PiecewiseLinear::zero(),
            };
            levels.push(pl);
        }
        Ok(Self::from_levels(levels))
    }
}

/// Supremum over all levels of the sup distance between corresponding
/// level functions; missing levels count as zero.
pub fn sup_distance<T: Real>(a: &Landscape<T>, b: &Landscape<T>) -> T {
    let zero = PiecewiseLinear::zero();
    let n = a.level_count().max(b.level_count());
    let mut worst = T::zero();
    for k in 0..n {
        let fa = a.levels.get(k).unwrap_or(&zero);
        let fb = b.levels.get(k).unwrap_or(&zero);
        worst = worst.max(sup_diff(fa, fb));
    }
    worst
}

/// Drop breakpoints that sit exactly on the segment through their
/// neighbors. The k-th largest of hat functions only ever has slopes -1, 0,
/// or +1, so a slope change below one half is floating noise from sampling
/// a straight stretch, never a real kink.
fn prune_collinear<T: Real>(pts: Vec<(T, T)>) -> Vec<(T, T)> {
    let half = cast::<T>(0.5);
    let slope = |a: (T, T), b: (T, T)| (b.1 - a.1) / (b.0 - a.0);
    let mut out: Vec<(T, T)> = Vec::with_capacity(pts.len().min(8));
    for p in pts {
        while out.len() >= 2 {
            let s_prev = slope(out[out.len() - 2], out[out.len() - 1]);
            let s_new = slope(out[out.len() - 1], p);
            if (s_new - s_prev).abs() < half {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}
