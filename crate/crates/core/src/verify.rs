//! Cross-checking harness: empirical landscapes against operator claims.
//!
//! Three checks, each returning a [`VerificationReport`] of per-n rows:
//! commutation (applying the operator to the landscape of iterate n
//! reproduces the landscape of iterate n+1), convergence (empirical
//! landscapes approach the operator's fixed point at the geometric rate of
//! the contraction ratio), and stability fuzzing (landscape distance never
//! exceeds twice the Hausdorff distance between perturbed clouds).

use std::fmt::Write as FmtWrite;
use std::io::Write;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ifs::{hausdorff_distance, AffineIfs, PointCloud};
use crate::landscape::{sup_distance, Landscape};
use crate::num::{cast, Real};
use crate::operator::LandscapeOperator;
use crate::persistence::h0_diagram;

/// Absolute slack added to every bound comparison. Genuine quantities at
/// the tested depths are powers of the contraction ratio with magnitudes
/// well above 1e-10, so the slack cannot absorb a real failure.
pub fn bound_slack<T: Real>() -> T {
    cast(1e-9)
}

/// One comparison: a measured distance against its claimed bound.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow<T> {
    pub n: usize,
    pub points: usize,
    pub distance: T,
    pub bound: T,
    pub pass: bool,
}

impl<T: Real> CheckRow<T> {
    pub fn new(n: usize, points: usize, distance: T, bound: T) -> Self {
        let pass = distance <= bound + bound_slack::<T>();
        Self {
            n,
            points,
            distance,
            bound,
            pass,
        }
    }
}

/// A labelled batch of check rows with an overall verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<T> {
    label: String,
    rows: Vec<CheckRow<T>>,
    seed: Option<u64>,
    violations: Vec<String>,
    pass: bool,
}

impl<T: Real> VerificationReport<T> {
    pub fn new(
        label: String,
        rows: Vec<CheckRow<T>>,
        seed: Option<u64>,
        violations: Vec<String>,
    ) -> Self {
        let pass = rows.iter().all(|r| r.pass) && violations.is_empty();
        Self {
            label,
            rows,
            seed,
            violations,
            pass,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rows(&self) -> &[CheckRow<T>] {
        &self.rows
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn violations(&self) -> &[String] {
        &self.violations
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    /// Aligned plain-text rendering, deterministic for fixed inputs.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.label);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        let _ = writeln!(
            out,
            "{:>6} {:>10} {:>16} {:>16}  pass",
            "n", "points", "distance", "bound"
        );
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:>6} {:>10} {:>16} {:>16}  {}",
                row.n,
                row.points,
                format_sci(row.distance),
                format_sci(row.bound),
                if row.pass { "ok" } else { "FAIL" }
            );
        }
        for v in &self.violations {
            let _ = writeln!(out, "note: {v}");
        }
        let _ = writeln!(
            out,
            "result: {} ({}/{} rows)",
            if self.pass { "PASS" } else { "FAIL" },
            self.rows.iter().filter(|r| r.pass).count(),
            self.rows.len()
        );
        out
    }

    /// CSV rendering with header `n,points,distance,bound,pass`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n,points,distance,bound,pass")?;
        for row in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{}",
                row.n, row.points, row.distance, row.bound, row.pass
            )?;
        }
        Ok(())
    }
}

fn format_sci<T: Real>(x: T) -> String {
    format!("{:.6e}", x.to_f64().unwrap_or(f64::NAN))
}

/// Landscape of the degree-0 persistence of a cloud.
fn cloud_landscape<T: Real>(cloud: &PointCloud<T>) -> Result<Landscape<T>> {
    Ok(Landscape::from_diagram(&h0_diagram(cloud)?))
}

/// Check that the operator maps each empirical landscape to the next one:
/// rows compare `op` applied to the landscape of S_n against the landscape
/// of S_{n+1}, both truncated to `levels`, for n = 1..n_max−1. The claimed
/// bound is zero — commutation is exact up to float slack.
pub fn commutation_report<T: Real>(
    ifs: &AffineIfs<T>,
    op: &LandscapeOperator<T>,
    n_max: usize,
    levels: usize,
    cap: usize,
) -> Result<VerificationReport<T>> {
    let label =
        format!("commutation: operator application vs next iterate, {levels} levels, n < {n_max}");
    let mut rows = Vec::new();
    if n_max >= 2 {
        let mut cloud = ifs.iterate(&ifs.seed_points(), 1, cap)?;
        let mut current = cloud_landscape(&cloud)?;
        for n in 1..n_max {
            let next_cloud = ifs.iterate(&cloud, 1, cap)?;
            let next = cloud_landscape(&next_cloud)?;
            let lhs = op.apply(&current, levels);
            let rhs = next.truncate(levels);
            let distance = sup_distance(&lhs, &rhs);
            rows.push(CheckRow::new(n, next_cloud.len(), distance, T::zero()));
            cloud = next_cloud;
            current = next;
        }
    }
    Ok(VerificationReport::new(label, rows, None, Vec::new()))
}

/// Check that empirical landscapes converge to the operator's fixed point:
/// rows compare the landscape of S_n against the fixed point with bound
/// c^n · δ_1, for n = 0..n_max. Also verifies that distances decay by a
/// factor of at most c (plus slack) from each row to the next; violations
/// fail the report.
///
/// The fixed point is materialized deep enough (the larger of `levels` and
/// the final cloud size) that truncation never hides or inflates any row's
/// distance.
pub fn convergence_report<T: Real>(
    ifs: &AffineIfs<T>,
    op: &LandscapeOperator<T>,
    n_max: usize,
    levels: usize,
    cap: usize,
) -> Result<VerificationReport<T>> {
    let label = format!("convergence: iterate landscapes vs fixed point, n up to {n_max}");
    let mut clouds = Vec::with_capacity(n_max + 1);
    clouds.push(ifs.iterate(&ifs.seed_points(), 0, cap)?);
    for _ in 1..=n_max {
        let next = ifs.iterate(clouds.last().expect("nonempty"), 1, cap)?;
        clouds.push(next);
    }
    let deepest = clouds.last().map_or(0, PointCloud::len);
    let fixed = op.fixed_point(levels.max(deepest))?;
    let delta_1 = op.head()[0];
    let c = op.scale();

    let mut rows = Vec::with_capacity(n_max + 1);
    for (n, cloud) in clouds.iter().enumerate() {
        let distance = sup_distance(&cloud_landscape(cloud)?, &fixed);
        let bound = c.powi(n as i32) * delta_1;
        rows.push(CheckRow::new(n, cloud.len(), distance, bound));
    }

    let mut violations = Vec::new();
    let factor = c + bound_slack::<T>();
    for pair in rows.windows(2) {
        if pair[1].distance > factor * pair[0].distance {
            violations.push(format!(
                "distance at n={} is {} but n={} gave {}: decay slower than the ratio {}",
                pair[1].n,
                format_sci(pair[1].distance),
                pair[0].n,
                format_sci(pair[0].distance),
                format_sci(c),
            ));
        }
    }
    Ok(VerificationReport::new(label, rows, None, violations))
}

/// Random-perturbation stability check: for each trial, a uniform cloud Y
/// in the unit square and a perturbed copy Z must satisfy
/// `sup_distance(landscape(Y), landscape(Z)) ≤ 2 · hausdorff(Y, Z)` up to
/// slack. The seed is recorded in the report so runs are reproducible.
///
/// The factor of two is sharp for this pipeline, not a safety margin.
/// Merge deaths are distances, and both endpoints of a merging pair can
/// move by the full Hausdorff distance in opposite directions, so every
/// death shifts by at most twice that distance — and a pair of two-point
/// clouds stretched symmetrically attains the shift exactly. Hats sharing
/// a zero birth differ by at most their death gap, which transfers the
/// same bound to the landscape distance level by level.
pub fn stability_fuzz<T: Real>(
    trials: usize,
    points_per_cloud: usize,
    perturbation: T,
    seed: u64,
) -> Result<VerificationReport<T>> {
    if points_per_cloud == 0 {
        return Err(Error::EmptyCloud);
    }
    if !perturbation.is_finite() || perturbation < T::zero() {
        return Err(Error::InvalidTolerance(format!("{perturbation}")));
    }
    let label = format!(
        "stability: {trials} random trials, {points_per_cloud} points, perturbation {perturbation}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(trials);
    for trial in 1..=trials {
        let mut y = Vec::with_capacity(points_per_cloud * 2);
        let mut z = Vec::with_capacity(points_per_cloud * 2);
        for _ in 0..points_per_cloud * 2 {
            let coord: f64 = rng.gen_range(0.0..1.0);
            let shift: f64 = rng.gen_range(-1.0..1.0);
            let base = cast::<T>(coord);
            y.push(base);
            z.push(base + perturbation * cast::<T>(shift));
        }
        let y = PointCloud::from_flat(2, y)?;
        let z = PointCloud::from_flat(2, z)?;
        let distance = sup_distance(&cloud_landscape(&y)?, &cloud_landscape(&z)?);
        let bound = cast::<T>(2.0) * hausdorff_distance(&y, &z)?;
        rows.push(CheckRow::new(trial, points_per_cloud, distance, bound));
    }
    Ok(VerificationReport::new(label, rows, Some(seed), Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::DEFAULT_POINT_CAP;
    use crate::operator::DeltaProfile;
    use crate::preset::Preset;

    #[test]
    fn cantor_commutation_is_exact() {
        let p = Preset::Cantor3;
        let report =
            commutation_report(&p.ifs::<f64>(), &p.operator(), 4, 32, DEFAULT_POINT_CAP).unwrap();
        assert!(report.pass());
        assert_eq!(report.rows().len(), 3);
        for row in report.rows() {
            assert!(
                row.distance <= 1e-12,
                "n={} distance {}",
                row.n,
                row.distance
            );
            assert_eq!(row.bound, 0.0);
        }
        // S_{n+1} for n = 1 has 8 points.
        assert_eq!(report.rows()[0].points, 8);
    }

    #[test]
    fn touching_images_still_commute() {
        let p = Preset::ModFifth;
        let report =
            commutation_report(&p.ifs::<f64>(), &p.operator(), 3, 32, DEFAULT_POINT_CAP).unwrap();
        assert!(report.pass(), "{}", report.render_text());
    }

    #[test]
    fn short_ranges_give_vacuous_reports() {
        let p = Preset::Cantor3;
        for n_max in [0, 1] {
            let report =
                commutation_report(&p.ifs::<f64>(), &p.operator(), n_max, 16, DEFAULT_POINT_CAP)
                    .unwrap();
            assert!(report.pass());
            assert!(report.rows().is_empty());
        }
    }

    /// Disjoint but lopsided images: the attractor spans [0, 3] with image
    /// gaps 1.41666... and 0.08333..., so the candidate resolutions look
    /// plausible, yet a scaled copy of the big gap (0.2361...) outranks the
    /// small gap itself and the level ordering the operator claims is wrong.
    fn lopsided_ifs() -> AffineIfs<f64> {
        AffineIfs::new_1d(1.0 / 6.0, &[0.0, 11.5, 15.0]).unwrap()
    }

    #[test]
    fn misclaimed_operator_fails_commutation() {
        let ifs = lopsided_ifs();
        assert!(!ifs.is_well_separated_1d().unwrap());
        let profile = DeltaProfile::exact_1d(ifs.resolution_candidates_1d()).unwrap();
        let op = LandscapeOperator::wsi(3, 1.0 / 6.0, &profile).unwrap();
        let report = commutation_report(&ifs, &op, 4, 32, DEFAULT_POINT_CAP).unwrap();
        assert!(!report.pass());
        assert!(report.rows().iter().any(|r| !r.pass && r.distance > 0.1));
    }

    #[test]
    fn cantor_convergence_tracks_the_geometric_bound() {
        let p = Preset::Cantor3;
        let report =
            convergence_report(&p.ifs::<f64>(), &p.operator(), 5, 64, DEFAULT_POINT_CAP).unwrap();
        assert!(report.pass(), "{}", report.render_text());
        assert_eq!(report.rows().len(), 6);
        for row in report.rows() {
            let strict = 0.5 / 3.0_f64.powi(row.n as i32);
            assert!(
                row.distance <= strict + 1e-12,
                "n={} distance {} exceeds {}",
                row.n,
                row.distance,
                strict
            );
        }
    }

    #[test]
    fn misclaimed_operator_fails_convergence() {
        // The wrong level ordering puts a persistent gap of about 0.118
        // between the iterate landscapes and the claimed fixed point, so
        // the geometric bound must be overrun once 3/6^n drops below it.
        let ifs = lopsided_ifs();
        let profile = DeltaProfile::exact_1d(ifs.resolution_candidates_1d()).unwrap();
        let op = LandscapeOperator::wsi(3, 1.0 / 6.0, &profile).unwrap();
        let report = convergence_report(&ifs, &op, 5, 32, DEFAULT_POINT_CAP).unwrap();
        assert!(!report.pass());
        assert!(report.rows().iter().any(|r| !r.pass && r.distance > 0.1));
    }

    #[test]
    fn stability_respects_twice_the_hausdorff_bound() {
        let report = stability_fuzz::<f64>(25, 12, 0.05, 7).unwrap();
        assert!(report.pass(), "{}", report.render_text());
        assert_eq!(report.rows().len(), 25);
        assert_eq!(report.seed(), Some(7));
        for row in report.rows() {
            assert!(row.distance <= row.bound + 1e-9);
            assert!(row.bound.is_finite());
        }
    }

    #[test]
    fn stretched_pair_attains_the_stability_bound_exactly() {
        // Two points pulled apart by h on each side: the Hausdorff distance
        // is h but the merge death moves by 2h, so the plain Hausdorff
        // distance would be a false bound and twice it is met with equality.
        let y = PointCloud::<f64>::from_flat(2, vec![0.0, 0.0, 1.0, 0.0]).unwrap();
        let z = PointCloud::from_flat(2, vec![-0.2, 0.0, 1.2, 0.0]).unwrap();
        let h = hausdorff_distance(&y, &z).unwrap();
        assert_eq!(h, 0.2);
        let distance = sup_distance(&cloud_landscape(&y).unwrap(), &cloud_landscape(&z).unwrap());
        assert!((distance - 2.0 * h).abs() <= 1e-12, "distance {distance}");
    }

    #[test]
    fn densifying_a_pair_also_needs_the_factor_of_two() {
        // Adding interior fill points is no gentler: bridging a unit gap
        // with points at 0.2 and 0.8 lowers the merge death from 1 to 0.6
        // while the Hausdorff distance is only 0.2.
        let y = PointCloud::<f64>::from_scalars(&[0.0, 1.0]).unwrap();
        let z = PointCloud::from_scalars(&[0.0, 0.2, 0.8, 1.0]).unwrap();
        let h = hausdorff_distance(&y, &z).unwrap();
        assert_eq!(h, 0.2);
        let distance = sup_distance(&cloud_landscape(&y).unwrap(), &cloud_landscape(&z).unwrap());
        assert!((distance - 2.0 * h).abs() <= 1e-12, "distance {distance}");
    }

    #[test]
    fn fuzz_reports_are_reproducible() {
        let a = stability_fuzz::<f64>(10, 8, 0.1, 42).unwrap();
        let b = stability_fuzz::<f64>(10, 8, 0.1, 42).unwrap();
        assert_eq!(a.render_text(), b.render_text());
        let c = stability_fuzz::<f64>(10, 8, 0.1, 43).unwrap();
        assert_ne!(a.render_text(), c.render_text());
    }

    #[test]
    fn fuzz_validates_inputs() {
        assert!(stability_fuzz::<f64>(5, 0, 0.1, 1).is_err());
        assert!(stability_fuzz::<f64>(5, 5, -0.1, 1).is_err());
        assert!(stability_fuzz::<f64>(5, 5, f64::NAN, 1).is_err());
        // Zero trials: vacuous but valid.
        let empty = stability_fuzz::<f64>(0, 5, 0.1, 1).unwrap();
        assert!(empty.pass());
        assert!(empty.rows().is_empty());
    }

    #[test]
    fn rows_pass_within_slack_only() {
        let row = CheckRow::new(1, 10, 1.0 + 0.9e-9, 1.0);
        assert!(row.pass);
        let row = CheckRow::new(1, 10, 1.0 + 2e-9, 1.0);
        assert!(!row.pass);
    }

    #[test]
    fn rendering_is_stable_and_parseable() {
        let rows = vec![
            CheckRow::new(1, 8, 1e-13, 0.0),
            CheckRow::new(2, 16, 0.5, 0.1),
        ];
        let report = VerificationReport::new("demo".into(), rows, Some(3), vec!["slow".into()]);
        assert!(!report.pass());
        let text = report.render_text();
        assert!(text.contains("demo"));
        assert!(text.contains("seed: 3"));
        assert!(text.contains("FAIL"));
        assert!(text.contains("note: slow"));
        assert!(text.contains("result: FAIL (1/2 rows)"));

        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let csv = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,points,distance,bound,pass");
        assert_eq!(lines[1], "1,8,0.0000000000001,0,true");
        assert_eq!(lines[2], "2,16,0.5,0.1,false");
    }
}
