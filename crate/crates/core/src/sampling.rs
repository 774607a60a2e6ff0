//! Seeded random surface points, strata and cut-locus points for audits and
//! tests. Sample `i` of a run draws from its own stream of the seed, so
//! results do not depend on scheduling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cut_locus::{diagram, surface_point};
use crate::error::Result;
use crate::surface::{reduce_to_canonical, Face, Isometry, Stratum, SurfacePoint};

pub fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// A point uniform with respect to area.
pub fn uniform_point(rng: &mut impl Rng) -> SurfacePoint {
    let face = Face::ALL[rng.gen_range(0..4)];
    let (r1, r2): (f64, f64) = (rng.gen(), rng.gen());
    let s = r1.sqrt();
    SurfacePoint::from_raw(face, [1.0 - s, s * (1.0 - r2), s * r2])
}

pub fn isometry(rng: &mut impl Rng) -> Isometry {
    Isometry::all()[rng.gen_range(0..24)]
}

/// Parameters `(x, alpha)` of a random canonical point of `stratum`.
pub fn stratum_params(rng: &mut impl Rng, stratum: Stratum) -> (f64, f64) {
    match stratum {
        Stratum::S0Interior => loop {
            let x = rng.gen_range(0.0..0.5);
            let alpha = rng.gen_range(1.0 / 3.0..1.0);
            if stratum.admits(x, alpha) {
                return (x, alpha);
            }
        },
        Stratum::S1EdgeAM => {
            let x = rng.gen_range(0.01..=0.5);
            (x, 1.0 - x)
        }
        Stratum::S2SegmentAC => (0.0, rng.gen_range(0.34..0.99)),
        Stratum::S3Centroid => (0.0, 1.0 / 3.0),
        Stratum::S4SegmentCM => {
            let x = rng.gen_range(0.01..0.49);
            (x, (1.0 + x) / 3.0)
        }
        Stratum::S5VertexA => (0.0, 1.0),
    }
}

/// A random point of `stratum`, moved by a random symmetry.
pub fn stratum_point(rng: &mut impl Rng, stratum: Stratum) -> SurfacePoint {
    let (x, alpha) = stratum_params(rng, stratum);
    isometry(rng).apply(&Stratum::point(x, alpha))
}

/// A point of the cut locus of `p`: on the arc of glued pair `arc` at
/// parameter `tau`.
pub fn arc_point(p: &SurfacePoint, arc: usize, tau: f64) -> Result<SurfacePoint> {
    let d = diagram(&reduce_to_canonical(p));
    surface_point(&d, d.arc_point(arc, tau, false))
}

/// Branch node `node` of the cut locus of `p`.
pub fn node_point(p: &SurfacePoint, node: usize) -> Result<SurfacePoint> {
    let d = diagram(&reduce_to_canonical(p));
    surface_point(&d, d.nodes[node].copies[0])
}

/// A random point in the interior of a random arc of the cut locus of `p`.
pub fn random_arc_point(rng: &mut impl Rng, p: &SurfacePoint) -> Result<SurfacePoint> {
    let d = diagram(&reduce_to_canonical(p));
    let arc = rng.gen_range(0..d.pairs.len());
    surface_point(&d, d.arc_point(arc, rng.gen_range(0.02..0.98), false))
}

pub fn random_node_point(rng: &mut impl Rng, p: &SurfacePoint) -> Result<SurfacePoint> {
    let d = diagram(&reduce_to_canonical(p));
    let node = rng.gen_range(0..d.nodes.len());
    surface_point(&d, d.nodes[node].copies[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a = uniform_point(&mut rng_for(7, 3));
        let b = uniform_point(&mut rng_for(7, 3));
        let c = uniform_point(&mut rng_for(7, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn stratum_samples_reduce_to_their_stratum() {
        let mut rng = rng_for(1, 0);
        for s in Stratum::ALL {
            for _ in 0..20 {
                let p = stratum_point(&mut rng, s);
                assert_eq!(reduce_to_canonical(&p).stratum, s);
            }
        }
    }
}
