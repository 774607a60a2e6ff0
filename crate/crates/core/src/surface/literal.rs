use super::{make_point, Edge, Face, SurfacePoint, Vertex};
use crate::error::{Error, Result};

/// Parse a point literal: `a|b|c|d`, `centroid:<face>`, `mid:<edge>` or
/// `<face>:<w1>,<w2>,<w3>`.
pub fn parse_point(s: &str) -> Result<SurfacePoint> {
    let bad = || Error::ParsePoint(s.to_string());
    let s = s.trim();
    if s.len() == 1 {
        let v = s.chars().next().and_then(Vertex::from_name).ok_or_else(bad)?;
        return Ok(SurfacePoint::vertex(v));
    }
    let (head, tail) = s.split_once(':').ok_or_else(bad)?;
    match head {
        "centroid" => Face::from_name(tail).map(SurfacePoint::centroid).ok_or_else(bad),
        "mid" => Edge::from_name(tail).map(SurfacePoint::midpoint).ok_or_else(bad),
        _ => {
            let face = Face::from_name(head).ok_or_else(bad)?;
            let weights: Vec<f64> = tail
                .split(',')
                .map(|w| w.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            let weights: [f64; 3] = weights.try_into().map_err(|_| bad())?;
            // weights follow the letters as written
            let mut bary = [0.0; 3];
            for (ch, w) in head.chars().zip(weights) {
                let slot = Vertex::from_name(ch).and_then(|v| face.slot(v)).ok_or_else(bad)?;
                bary[slot] = w;
            }
            make_point(face, bary)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_order_sets_weight_order() {
        assert_eq!(parse_point("cba:0.2,0.5,0.3").unwrap(), parse_point("abc:0.3,0.5,0.2").unwrap());
    }

    #[test]
    fn literals() {
        assert_eq!(parse_point("a").unwrap(), SurfacePoint::vertex(Vertex::A));
        assert_eq!(parse_point("centroid:bcd").unwrap(), SurfacePoint::centroid(Face::BCD));
        assert_eq!(parse_point("mid:ac").unwrap(), SurfacePoint::midpoint(Edge::new(Vertex::A, Vertex::C)));
        let p = parse_point("abc:0.2,0.5,0.3").unwrap();
        assert_eq!(p.bary, [0.2, 0.5, 0.3]);
    }

    #[test]
    fn malformed_literals() {
        for s in ["e", "mid:aa", "centroid:abe", "abc:0.5,0.5", "abc:x,0,1", "xyz:1,0,0", ""] {
            assert!(matches!(parse_point(s), Err(Error::ParsePoint(_))), "{s}");
        }
        assert!(matches!(parse_point("abc:0.5,0.6,0.1"), Err(Error::BadSum(_))));
    }
}
