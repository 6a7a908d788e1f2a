//! Control point sets used to measure errors and norms on the cube.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::Point3;

/// Seed used whenever the caller does not supply one.
pub const DEFAULT_SEED: u64 = 1729;

/// Random points appended to the tensor part of the default grid.
pub const DEFAULT_RANDOM_POINTS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct ControlGrid {
    pub points: Vec<Point3>,
}

impl ControlGrid {
    pub fn new(points: Vec<Point3>) -> Self {
        ControlGrid { points }
    }

    /// Tensor Chebyshev-Lobatto grid with `per_axis` points on each axis.
    pub fn tensor_lobatto(per_axis: usize) -> Self {
        let ticks: Vec<f64> = if per_axis == 1 {
            vec![0.0]
        } else {
            (0..per_axis)
                .map(|s| (PI * s as f64 / (per_axis - 1) as f64).cos())
                .collect()
        };
        let mut points = Vec::with_capacity(per_axis.pow(3));
        for &x in &ticks {
            for &y in &ticks {
                for &z in &ticks {
                    points.push([x, y, z]);
                }
            }
        }
        ControlGrid { points }
    }

    /// Uniform random points in the cube.
    pub fn random(count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..count)
            .map(|_| {
                [
                    rng.gen_range(-1.0..=1.0),
                    rng.gen_range(-1.0..=1.0),
                    rng.gen_range(-1.0..=1.0),
                ]
            })
            .collect();
        ControlGrid { points }
    }

    /// `min(2n + 1, 33)` Lobatto points per axis plus 1000 seeded random points.
    pub fn default_for(n: usize) -> Self {
        Self::tensor_lobatto((2 * n + 1).min(33))
            .merged(Self::random(DEFAULT_RANDOM_POINTS, DEFAULT_SEED))
    }

    /// `min(4n + 1, 65)` Lobatto points per axis plus 4000 seeded random points.
    pub fn dense_for(n: usize) -> Self {
        Self::tensor_lobatto((4 * n + 1).min(65))
            .merged(Self::random(4 * DEFAULT_RANDOM_POINTS, DEFAULT_SEED))
    }

    pub fn merged(mut self, other: ControlGrid) -> Self {
        self.points.extend(other.points);
        self
    }

    pub fn with_points(mut self, extra: &[Point3]) -> Self {
        self.points.extend_from_slice(extra);
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}
