//! Built-in example systems and their landscape operators.
//!
//! Four presets have well-separated images, so their operators come
//! straight from the exact 1-D resolution profile. The other three
//! (mod-fifth, triangle, carpet) overlap or crowd their images; their
//! operators carry hand-derived heads that the verification harness
//! cross-checks against empirical landscapes.

use crate::error::{Error, Result};
use crate::ifs::AffineIfs;
use crate::num::{cast, Real};
use crate::operator::{DeltaProfile, LandscapeOperator};

/// The built-in example systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Middle-thirds Cantor set: two maps, ratio 1/3, diameter 1.
    Cantor3,
    /// Two maps at ratio 1/3 spanning [0, 1/2].
    RightThird,
    /// Three maps at ratio 1/5, evenly spaced, diameter 1.
    Fifth,
    /// Three maps at ratio 1/6 with uneven gaps.
    Sixth,
    /// Three maps at ratio 1/5 with two images sharing a point.
    ModFifth,
    /// Sierpinski-style triangle: three planar maps at ratio 1/3.
    Triangle,
    /// Four planar maps at ratio 1/3 on the corners of a rectangle.
    Carpet,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::Cantor3,
        Preset::RightThird,
        Preset::Fifth,
        Preset::Sixth,
        Preset::ModFifth,
        Preset::Triangle,
        Preset::Carpet,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Cantor3 => "cantor3",
            Preset::RightThird => "right-third",
            Preset::Fifth => "fifth",
            Preset::Sixth => "sixth",
            Preset::ModFifth => "mod-fifth",
            Preset::Triangle => "triangle",
            Preset::Carpet => "carpet",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .find(|p| p.name() == name)
            .copied()
            .ok_or_else(|| Error::UnknownPreset {
                name: name.to_string(),
                known: Self::ALL
                    .iter()
                    .map(|p| p.name())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    pub fn description(&self) -> &'static str {
        match self {
            Preset::Cantor3 => "middle-thirds Cantor set (two maps, ratio 1/3)",
            Preset::RightThird => "right-third Cantor set (two maps, ratio 1/3, diameter 1/2)",
            Preset::Fifth => "evenly spaced three-map Cantor set at ratio 1/5",
            Preset::Sixth => "three-map Cantor set at ratio 1/6 with uneven gaps",
            Preset::ModFifth => "three-map ratio-1/5 system whose first two images touch",
            Preset::Triangle => "planar three-map triangle fractal at ratio 1/3",
            Preset::Carpet => "planar four-map rectangle-corner fractal at ratio 1/3",
        }
    }

    pub fn ifs<T: Real>(&self) -> AffineIfs<T> {
        let third: T = T::one() / cast(3.0);
        let built = match self {
            Preset::Cantor3 => AffineIfs::new_1d(third, &[T::zero(), cast(2.0)]),
            Preset::RightThird => AffineIfs::new_1d(third, &[T::zero(), T::one()]),
            Preset::Fifth => AffineIfs::new_1d(cast(0.2), &[T::zero(), cast(2.0), cast(4.0)]),
            Preset::Sixth => {
                AffineIfs::new_1d(T::one() / cast(6.0), &[T::zero(), cast(2.0), cast(5.0)])
            }
            Preset::ModFifth => AffineIfs::new_1d(cast(0.2), &[T::zero(), T::one(), cast(4.0)]),
            Preset::Triangle => AffineIfs::new(
                2,
                third,
                vec![
                    vec![T::zero(), T::zero()],
                    vec![T::zero(), cast(2.0)],
                    vec![cast(2.0), T::zero()],
                ],
            ),
            Preset::Carpet => AffineIfs::new(
                2,
                third,
                vec![
                    vec![T::zero(), T::zero()],
                    vec![cast(2.0), T::zero()],
                    vec![T::zero(), T::one()],
                    vec![cast(2.0), T::one()],
                ],
            ),
        };
        built.expect("preset parameters are valid")
    }

    pub fn operator<T: Real>(&self) -> LandscapeOperator<T> {
        let third: T = T::one() / cast(3.0);
        let sixth: T = T::one() / cast(6.0);
        let built = match self {
            Preset::Cantor3 | Preset::RightThird | Preset::Fifth | Preset::Sixth => {
                let ifs = self.ifs::<T>();
                let deltas = ifs.deltas_1d().expect("preset is well separated");
                let profile =
                    DeltaProfile::exact_1d(deltas).expect("resolutions are nonincreasing");
                LandscapeOperator::wsi(ifs.map_count(), ifs.ratio(), &profile)
            }
            Preset::ModFifth => LandscapeOperator::new(vec![T::one(), cast(0.4)], 3, cast(0.2)),
            Preset::Triangle => {
                LandscapeOperator::new(vec![cast::<T>(2.0).sqrt(), third, third], 3, third)
            }
            Preset::Carpet => {
                LandscapeOperator::new(vec![cast::<T>(1.25).sqrt(), third, sixth, sixth], 4, third)
            }
        };
        built.expect("preset operator parameters are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::DEFAULT_POINT_CAP;
    use crate::persistence::h0_diagram;

    #[test]
    fn names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(Preset::from_name(p.name()).unwrap(), p);
            assert!(!p.description().is_empty());
        }
        let err = Preset::from_name("cantor").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("cantor3") && msg.contains("carpet"), "{msg}");
    }

    #[test]
    fn well_separated_presets_have_exact_profiles() {
        let cases: Vec<(Preset, Vec<f64>)> = vec![
            (Preset::Cantor3, vec![1.0, 1.0 / 3.0]),
            (Preset::RightThird, vec![0.5, 1.0 / 6.0]),
            (Preset::Fifth, vec![1.0, 0.2, 0.2]),
            (Preset::Sixth, vec![1.0, 1.0 / 3.0, 1.0 / 6.0]),
        ];
        for (p, expect) in cases {
            let ifs = p.ifs::<f64>();
            assert!(ifs.is_well_separated_1d().unwrap(), "{}", p.name());
            assert_eq!(ifs.deltas_1d().unwrap(), expect, "{}", p.name());
            let op = p.operator::<f64>();
            assert_eq!(op.head(), expect.as_slice(), "{}", p.name());
            assert_eq!(op.block(), ifs.map_count());
            assert_eq!(op.scale(), ifs.ratio());
        }
    }

    #[test]
    fn crowded_presets_carry_literal_heads() {
        let mod_fifth = Preset::ModFifth.operator::<f64>();
        assert_eq!(mod_fifth.head(), &[1.0, 0.4]);
        assert_eq!(mod_fifth.block(), 3);
        assert_eq!(mod_fifth.scale(), 0.2);

        let triangle = Preset::Triangle.operator::<f64>();
        assert_eq!(triangle.head(), &[2.0_f64.sqrt(), 1.0 / 3.0, 1.0 / 3.0]);
        assert_eq!(triangle.block(), 3);

        let carpet = Preset::Carpet.operator::<f64>();
        assert_eq!(
            carpet.head(),
            &[1.25_f64.sqrt(), 1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]
        );
        assert_eq!(carpet.block(), 4);
        assert_eq!(carpet.scale(), 1.0 / 3.0);
    }

    #[test]
    fn separation_verdicts_match_the_catalog() {
        assert!(!Preset::ModFifth
            .ifs::<f64>()
            .is_well_separated_1d()
            .unwrap());
        for p in [Preset::Triangle, Preset::Carpet] {
            let ifs = p.ifs::<f64>();
            let check = ifs.separation_check(4, DEFAULT_POINT_CAP).unwrap();
            assert!(!check.separated, "{} should be crowded", p.name());
        }
    }

    #[test]
    fn seeds_are_the_expected_extremes() {
        let cantor = Preset::Cantor3.ifs::<f64>();
        let seed = cantor.seed_points();
        assert_eq!(seed.coords(), &[0.0, 1.0]);

        let triangle = Preset::Triangle.ifs::<f64>();
        let seed = triangle.seed_points();
        assert_eq!(seed.len(), 3);

        let carpet = Preset::Carpet.ifs::<f64>();
        let seed = carpet.seed_points();
        assert_eq!(seed.len(), 4);
        assert_eq!(seed.diameter().unwrap(), 1.25_f64.sqrt());
    }

    #[test]
    fn head_leads_with_the_diameter() {
        // The first head entry of every preset operator is the attractor
        // diameter, which the seed cloud already realizes for these
        // systems (seeds are hull extremes, preserved by iteration).
        for p in Preset::ALL {
            let ifs = p.ifs::<f64>();
            let op = p.operator::<f64>();
            let s2 = ifs
                .iterate(&ifs.seed_points(), 2, DEFAULT_POINT_CAP)
                .unwrap();
            assert_eq!(s2.diameter().unwrap(), op.head()[0], "{}", p.name());
        }
    }

    #[test]
    fn first_iterate_diagrams_match_hand_enumeration() {
        // mod-fifth S_1 collapses to five points with gaps {0.2, 0.2, 0.4}
        // bridged at 0.2 and 0.4.
        let ifs = Preset::ModFifth.ifs::<f64>();
        let s1 = ifs
            .iterate(&ifs.seed_points(), 1, DEFAULT_POINT_CAP)
            .unwrap();
        assert_eq!(s1.len(), 5);
        let d = h0_diagram(&s1).unwrap();
        let deaths: Vec<(f64, usize)> = d
            .pairs()
            .iter()
            .map(|p| (p.death, p.multiplicity))
            .collect();
        assert_eq!(deaths, vec![(1.0, 1), (0.4, 1), (0.2, 3)]);
    }
}
