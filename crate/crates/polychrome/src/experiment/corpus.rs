//! Named adversarial instance presets. Each preset is a deterministic
//! function of (n, seed); the checked-in `corpus/` files at the repository
//! root are snapshots of these generators under fixed seeds.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{random_point_set, random_unit_height_point_set, PointSet, RangeFamily};

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub dim: usize,
    /// The family the instance is designed to stress.
    pub family: RangeFamily,
    pub description: &'static str,
}

pub const PRESETS: [Preset; 8] = [
    Preset {
        name: "staircase",
        dim: 2,
        family: RangeFamily::Bottomless,
        description: "descending staircase: sweep insertions arrive in reverse x order",
    },
    Preset {
        name: "alternating-towers",
        dim: 2,
        family: RangeFamily::BottomlessOrTopless,
        description: "x-alternating low/high bands interleaving bottom and top structure",
    },
    Preset {
        name: "grid-jitter",
        dim: 2,
        family: RangeFamily::StripsAxisAligned,
        description: "jittered square grid: long runs of near-ties on both axes",
    },
    Preset {
        name: "diagonal",
        dim: 2,
        family: RangeFamily::Bottomless,
        description: "near-diagonal: x order and y order almost coincide",
    },
    Preset {
        name: "uniform",
        dim: 2,
        family: RangeFamily::Bottomless,
        description: "uniform planar baseline",
    },
    Preset {
        name: "slab-uniform",
        dim: 2,
        family: RangeFamily::UnitHeight,
        description: "uniform across four integer slabs",
    },
    Preset {
        name: "grid3",
        dim: 3,
        family: RangeFamily::StripsAxisAligned,
        description: "jittered cubic grid in three dimensions",
    },
    Preset {
        name: "tiny",
        dim: 2,
        family: RangeFamily::Bottomless,
        description: "fixed eight points, small enough for the definition-direct oracle",
    },
];

/// `(preset name, n, seed)` under which each checked-in `corpus/` file was
/// generated. Regenerate with
/// `polychrome gen --preset NAME --n N --seed SEED --out corpus/NAME.json`;
/// the corpus integration test asserts the files match these byte for byte.
pub const SNAPSHOTS: [(&str, usize, u64); 8] = [
    ("staircase", 120, 17),
    ("alternating-towers", 120, 17),
    ("grid-jitter", 121, 17),
    ("diagonal", 120, 17),
    ("uniform", 150, 17),
    ("slab-uniform", 200, 17),
    ("grid3", 125, 17),
    ("tiny", 8, 0),
];

pub fn preset(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "unknown preset {name:?}; known: {}",
            PRESETS.map(|p| p.name).join(", ")
        ))
    })
}

/// Builds the preset instance. `n` is the requested size (the `tiny` preset
/// ignores it); `seed` drives only the tie-breaking jitter, so the shape is
/// stable across seeds.
pub fn build_preset(name: &str, n: usize, seed: u64) -> Result<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match name {
        "staircase" => {
            let pts = (0..n)
                .map(|i| {
                    vec![
                        i as f64 + 0.4 * rng.gen::<f64>(),
                        (n - 1 - i) as f64 + 0.4 * rng.gen::<f64>(),
                    ]
                })
                .collect();
            PointSet::new(2, pts)
        }
        "alternating-towers" => {
            let pts = (0..n)
                .map(|i| {
                    let band = if i % 2 == 0 { 0.0 } else { n as f64 };
                    vec![
                        i as f64 + 0.4 * rng.gen::<f64>(),
                        band + i as f64 + 0.4 * rng.gen::<f64>(),
                    ]
                })
                .collect();
            PointSet::new(2, pts)
        }
        "grid-jitter" => jittered_grid(2, n, &mut rng),
        "grid3" => jittered_grid(3, n, &mut rng),
        "diagonal" => {
            let pts = (0..n)
                .map(|i| {
                    let x = i as f64 + 0.4 * rng.gen::<f64>();
                    vec![x, x + 0.2 * rng.gen::<f64>() - 0.1]
                })
                .collect();
            PointSet::new(2, pts)
        }
        "uniform" => random_point_set(2, n, seed),
        "slab-uniform" => random_unit_height_point_set(n, 4, seed),
        "tiny" => PointSet::new(
            2,
            vec![
                vec![0.3, 0.7],
                vec![1.1, 2.3],
                vec![2.2, 1.6],
                vec![3.4, 3.9],
                vec![4.1, 0.2],
                vec![5.3, 3.1],
                vec![6.2, 2.8],
                vec![7.4, 1.35],
            ],
        ),
        other => {
            preset(other)?;
            unreachable!("preset {other} registered but not built")
        }
    }
}

/// `n` cells of a jittered `side^dim` grid, row-major. The jitter spans most
/// of the cell so per-axis coordinates are distinct with probability one.
fn jittered_grid(dim: usize, n: usize, rng: &mut ChaCha8Rng) -> Result<PointSet> {
    let mut side = 1usize;
    while side.pow(dim as u32) < n {
        side += 1;
    }
    let pts = (0..n)
        .map(|i| {
            let mut cell = i;
            (0..dim)
                .map(|_| {
                    let c = cell % side;
                    cell /= side;
                    c as f64 + 0.8 * rng.gen::<f64>()
                })
                .collect()
        })
        .collect();
    PointSet::new(dim, pts)
}
