use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::rational::Rational;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// A face `x_axis = L_axis` or `x_axis = U_axis` of a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub axis: usize,
    pub side: Side,
}

impl std::fmt::Display for Face {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self.side {
            Side::Lower => "lower",
            Side::Upper => "upper",
        };
        write!(f, "face(axis {}, {s})", self.axis)
    }
}

/// Axis-aligned box, a product of closed intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
#[serde(bound(
    serialize = "Interval<T>: Serialize",
    deserialize = "Interval<T>: Deserialize<'de>"
))]
pub struct Boxn<T> {
    dims: Vec<Interval<T>>,
}

impl<T: Scalar + PartialOrd> Boxn<T> {
    pub fn new(dims: Vec<Interval<T>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Dimension { expected: 1, got: 0 });
        }
        Ok(Boxn { dims })
    }

    pub fn planar(x: Interval<T>, y: Interval<T>) -> Self {
        Boxn { dims: vec![x, y] }
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[Interval<T>] {
        &self.dims
    }

    pub fn axis(&self, i: usize) -> &Interval<T> {
        &self.dims[i]
    }

    /// All `2n` faces, ordered axis-major, lower before upper.
    pub fn faces(&self) -> Vec<Face> {
        (0..self.dim())
            .flat_map(|axis| {
                [Side::Lower, Side::Upper]
                    .into_iter()
                    .map(move |side| Face { axis, side })
            })
            .collect()
    }

    pub fn face_value(&self, face: Face) -> &T {
        match face.side {
            Side::Lower => self.dims[face.axis].lo(),
            Side::Upper => self.dims[face.axis].hi(),
        }
    }

    pub fn contains_point(&self, p: &[T]) -> bool {
        p.len() == self.dim() && self.dims.iter().zip(p).all(|(d, x)| d.contains(x))
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.dims.iter().zip(&other.dims).all(|(a, b)| a.intersects(b))
    }

    pub fn contains_box(&self, other: &Self) -> bool {
        self.dim() == other.dim()
            && self.dims.iter().zip(&other.dims).all(|(a, b)| a.contains_interval(b))
    }
}

impl Boxn<Rational> {
    /// Every coordinate strictly positive on the closed box.
    pub fn is_strictly_positive(&self) -> bool {
        self.dims.iter().all(|d| d.is_positive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn faces_enumerated() {
        let b = Boxn::planar(
            Interval::new(rat(1, 2), rat(1619, 2500)).unwrap(),
            Interval::new(rat(4, 5), rat(83, 100)).unwrap(),
        );
        let faces = b.faces();
        assert_eq!(faces.len(), 4);
        assert_eq!(*b.face_value(faces[1]), rat(1619, 2500));
        assert_eq!(*b.face_value(faces[2]), rat(4, 5));
        assert!(b.contains_point(&[rat(3, 5), rat(81, 100)]));
        assert!(!b.contains_point(&[int(1), rat(81, 100)]));
        assert!(b.is_strictly_positive());
    }
}
