//! `[re, im]` pair encoding shared by every JSON surface.

use num_complex::Complex64;

pub(crate) fn to_pairs(zs: &[Complex64]) -> Vec<[f64; 2]> {
    zs.iter().map(|z| [z.re, z.im]).collect()
}

pub(crate) fn from_pairs(ps: &[[f64; 2]]) -> Vec<Complex64> {
    ps.iter().map(|p| Complex64::new(p[0], p[1])).collect()
}

/// serde adapter for a single `Complex64` field encoded as `[re, im]`.
/// Reports are serialize-only, so no deserialize half is provided.
pub(crate) mod cpair {
    use num_complex::Complex64;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }
}

/// serde adapter for an `Option<Complex64>` field encoded as `[re, im]`.
pub(crate) mod cpair_opt {
    use num_complex::Complex64;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        z.map(|z| [z.re, z.im]).serialize(s)
    }
}

/// serde adapter for a `Vec<Complex64>` field encoded as `[[re, im], ...]`.
pub(crate) mod cpairs {
    use num_complex::Complex64;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(zs: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        super::to_pairs(zs).serialize(s)
    }
}
