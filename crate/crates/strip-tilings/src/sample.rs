//! Seeded random generators for triangulations and specs.
//!
//! Sampling is not uniform over all triangulations (the apex recursion
//! favours fans), but every triangulation and every staircase shape has
//! positive probability, which is what the randomized suites need.

use rand::Rng;

use crate::polygon::PolygonTriangulation;
use crate::strip::{Arc, PeriodicTriangulationSpec};

/// A random triangulation of a polygon with `vertex_count >= 3` vertices.
///
/// Picks a random apex for the triangle over the edge `(0, n)` and recurses
/// on both flanks.
pub fn random_triangulation<R: Rng + ?Sized>(
    rng: &mut R,
    vertex_count: usize,
) -> PolygonTriangulation {
    assert!(vertex_count >= 3, "need at least a triangle");
    let mut diagonals = Vec::new();
    let mut stack = vec![(0usize, vertex_count - 1)];
    while let Some((a, b)) = stack.pop() {
        if b - a < 2 {
            continue;
        }
        let apex = rng.random_range(a + 1..b);
        if apex - a >= 2 {
            diagonals.push((a, apex));
            stack.push((a, apex));
        }
        if b - apex >= 2 {
            diagonals.push((apex, b));
            stack.push((apex, b));
        }
    }
    PolygonTriangulation::new(vertex_count, diagonals)
        .expect("apex recursion yields a triangulation")
}

/// Diagonal offsets triangulating one step of jump `g`: the closing arc
/// `(0, g)` plus a triangulation of the polygon it cuts off.  Offsets are
/// relative to the start of the step's run.
fn random_run<R: Rng + ?Sized>(rng: &mut R, g: i64) -> Vec<(i64, i64)> {
    if g < 2 {
        return Vec::new();
    }
    let mut out = vec![(0, g)];
    let sub = random_triangulation(rng, (g + 1) as usize);
    out.extend(sub.diagonals().map(|(a, b)| (a as i64, b as i64)));
    out
}

/// A random valid spec with `2..=max_steps` steps per period and jumps up
/// to `max_jump` (so step polygons have at most `max_jump + 2` vertices).
///
/// Orientations are redrawn until both kinds occur, which the shift-sign
/// condition requires.
pub fn random_spec<R: Rng + ?Sized>(
    rng: &mut R,
    max_steps: usize,
    max_jump: i64,
) -> PeriodicTriangulationSpec {
    assert!(max_steps >= 2 && max_jump >= 1);
    let steps = rng.random_range(2..=max_steps);
    let orientations: Vec<bool> = loop {
        let o: Vec<bool> = (0..steps).map(|_| rng.random()).collect();
        if o.contains(&true) && o.contains(&false) {
            break o;
        }
    };
    let mut points = vec![(0i64, 0i64)];
    let mut internal = Vec::with_capacity(steps);
    for &vertical in &orientations {
        let (x, y) = *points.last().unwrap();
        let g = rng.random_range(1..=max_jump);
        let arcs = if vertical {
            let top = x - g;
            points.push((top, y));
            random_run(rng, g)
                .into_iter()
                .map(|(a, b)| {
                    Arc::upper_internal(top + a, top + b).expect("offsets span at least two")
                })
                .collect()
        } else {
            points.push((x, y + g));
            random_run(rng, g)
                .into_iter()
                .map(|(a, b)| Arc::lower_internal(y + a, y + b).expect("offsets span at least two"))
                .collect()
        };
        internal.push(arcs);
    }
    let shift = points.pop().unwrap();
    PeriodicTriangulationSpec::new(points, shift, internal)
        .expect("constructed staircases are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    #[test]
    fn triangulations_have_the_right_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in 3..=9 {
            let pt = random_triangulation(&mut rng, m);
            assert_eq!(pt.vertex_count(), m);
            assert_eq!(pt.diagonals().count(), m - 3);
        }
    }

    #[test]
    fn sampler_reaches_every_pentagon_triangulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let seen: BTreeSet<Vec<(usize, usize)>> = (0..200)
            .map(|_| random_triangulation(&mut rng, 5).diagonals().collect())
            .collect();
        assert_eq!(seen.len(), 5);
    }

    #[test]
    fn random_specs_respect_the_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let spec = random_spec(&mut rng, 8, 7);
            assert!((2..=8).contains(&spec.period()));
            let points = spec.fundamental_points();
            let (dx, dy) = spec.shift();
            assert!(dx < 0 && dy > 0);
            for k in 0..points.len() {
                let from = points[k];
                let to = if k + 1 < points.len() {
                    points[k + 1]
                } else {
                    (points[0].0 + dx, points[0].1 + dy)
                };
                let jump = (from.0 - to.0) + (to.1 - from.1);
                assert!((1..=7).contains(&jump), "jump {jump} out of range");
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let a = random_spec(&mut ChaCha8Rng::seed_from_u64(9), 6, 5);
        let b = random_spec(&mut ChaCha8Rng::seed_from_u64(9), 6, 5);
        assert_eq!(a, b);
    }
}
