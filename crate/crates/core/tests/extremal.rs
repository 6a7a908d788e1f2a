mod common;

use common::{log_abs_det, random_point, vandermonde_rows, ChebPoly};
use lissajous3::extremal::{
    extract, interpolate, lebesgue_constant, lebesgue_grid, vandermonde, wam_constant_probe,
    ExtremalKind,
};
use lissajous3::{dim_p3, Lattice, Variant};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const KINDS: [ExtremalKind; 2] = [ExtremalKind::Afp, ExtremalKind::Dlp];

#[test]
fn vandermonde_layout() {
    for n in 1..=8usize {
        let lattice = Lattice::new(n, Variant::Lobatto).unwrap();
        let v = vandermonde(&lattice, n).unwrap();
        assert_eq!(v.rows(), lattice.node_count());
        assert_eq!(v.cols(), dim_p3(n));
        assert!(v.rows() >= v.cols());
        assert!(v.matrix.column(0).iter().all(|&x| x == 1.0));
        let oracle = vandermonde_rows(&lattice.nodes[..5], n);
        for r in 0..5 {
            for c in 0..v.cols() {
                assert!((v.matrix.get(r, c) - oracle[r * v.cols() + c]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn sets_are_distinct_lattice_nodes_and_deterministic() {
    for n in [2usize, 5, 7] {
        for kind in KINDS {
            let (lattice, a) = extract(n, Variant::Lobatto, kind).unwrap();
            let (_, b) = extract(n, Variant::Lobatto, kind).unwrap();
            assert_eq!(a.indices, b.indices);
            assert_eq!(a.len(), dim_p3(n));
            let mut sorted = a.indices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), a.len());
            for (i, p) in a.indices.iter().zip(&a.points) {
                assert_eq!(lattice.nodes[*i], *p);
            }
        }
    }
}

#[test]
fn lebesgue_constants_are_bounded() {
    for n in 1..=6usize {
        for kind in KINDS {
            let (lattice, set) = extract(n, Variant::Lobatto, kind).unwrap();
            let lambda = lebesgue_constant(&set, &lebesgue_grid(&lattice)).unwrap();
            assert!(lambda >= 1.0 - 1e-12, "{kind} n={n}: {lambda}");
            assert!(lambda <= dim_p3(n) as f64, "{kind} n={n}: {lambda}");
        }
    }
}

#[test]
fn leja_prefixes_are_unisolvent() {
    for n in 1..=10usize {
        let (_, set) = extract(n, Variant::Lobatto, ExtremalKind::Dlp).unwrap();
        for r in 1..=n {
            let prefix = set.truncate(r).unwrap();
            let m = dim_p3(r);
            // columns of unit norm push |det| towards zero geometrically in m,
            // so the test uses the unscaled basis plus a condition bound
            let det = log_abs_det(vandermonde_rows(&prefix.points, r), m);
            assert!(det > (1e-12f64).ln(), "n={n} r={r}: log|det|={det}");
            assert!(one_norm_condition(&prefix) < 1e8, "n={n} r={r}");
            prefix.system().unwrap();
        }
    }
}

fn one_norm_condition(set: &lissajous3::ExtremalSet) -> f64 {
    let a = set.square_vandermonde();
    let inv = set.system().unwrap().lu().inverse();
    let norm = |m: &lissajous3::linalg::Matrix| {
        (0..m.cols)
            .map(|c| m.column(c).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    norm(&a) * norm(&inv)
}

#[test]
fn fekete_determinant_dominates_random_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=6usize {
        let (lattice, set) = extract(n, Variant::Lobatto, ExtremalKind::Afp).unwrap();
        let m = set.len();
        let afp = log_abs_det(vandermonde_rows(&set.points, n), m);
        let trials = if n <= 4 { 10_000 } else { 2_000 };
        for _ in 0..trials {
            let pick: Vec<[f64; 3]> = sample(&mut rng, lattice.node_count(), m)
                .into_iter()
                .map(|i| lattice.nodes[i])
                .collect();
            let other = log_abs_det(vandermonde_rows(&pick, n), m);
            assert!(other <= afp + 1e-9, "n={n}");
        }
    }
}

#[test]
fn interpolation_reproduces_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n in [1usize, 3, 6] {
        for kind in KINDS {
            let (_, set) = extract(n, Variant::Gauss, kind).unwrap();
            let p = ChebPoly::random(&mut rng, n);
            let c = interpolate(&set, |x| p.eval(x)).unwrap();
            for _ in 0..50 {
                let x = random_point(&mut rng);
                assert!(
                    (c.eval(x).unwrap() - p.eval(x)).abs() < 1e-10,
                    "{kind} n={n}"
                );
            }
        }
    }
}

#[test]
fn norming_constant_is_small_and_bounds_lebesgue() {
    for n in 2..=6usize {
        let lattice = Lattice::new(n, Variant::Lobatto).unwrap();
        let grid = lebesgue_grid(&lattice);
        let c = wam_constant_probe(n, Variant::Lobatto, &grid, 200, 7).unwrap();
        assert!(c >= 1.0);
        assert!(c <= 3.0 * ((n + 1) as f64).ln().powi(3) + 3.0, "n={n}: {c}");
        assert_eq!(
            c,
            wam_constant_probe(n, Variant::Lobatto, &grid, 200, 7).unwrap()
        );
        for kind in KINDS {
            let (_, set) = extract(n, Variant::Lobatto, kind).unwrap();
            let lambda = lebesgue_constant(&set, &grid).unwrap();
            assert!(lambda <= 1.1 * dim_p3(n) as f64 * c, "{kind} n={n}");
        }
    }
}
