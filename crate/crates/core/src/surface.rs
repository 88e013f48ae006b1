//! Closed surfaces and the arithmetic needed to reason about embeddings of
//! complete bipartite graphs in them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::SurfaceError;

/// A connected closed surface, identified by orientability and genus.
///
/// For orientable surfaces `genus` counts handles (`S0` sphere, `S1` torus);
/// for non-orientable ones it counts crosscaps (`N1` projective plane,
/// `N2` Klein bottle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surface {
    orientable: bool,
    genus: u32,
}

impl Surface {
    pub const SPHERE: Surface = Surface {
        orientable: true,
        genus: 0,
    };
    pub const TORUS: Surface = Surface {
        orientable: true,
        genus: 1,
    };
    pub const PROJECTIVE_PLANE: Surface = Surface {
        orientable: false,
        genus: 1,
    };
    pub const KLEIN_BOTTLE: Surface = Surface {
        orientable: false,
        genus: 2,
    };

    pub fn orientable(genus: u32) -> Self {
        Surface {
            orientable: true,
            genus,
        }
    }

    pub fn non_orientable(crosscaps: u32) -> Result<Self, SurfaceError> {
        if crosscaps == 0 {
            return Err(SurfaceError::ZeroCrosscaps);
        }
        Ok(Surface {
            orientable: false,
            genus: crosscaps,
        })
    }

    /// The surface with the given Euler characteristic and orientability.
    pub fn from_euler_characteristic(chi: i64, orientable: bool) -> Result<Self, SurfaceError> {
        let euler_genus = 2 - chi;
        if euler_genus < 0 {
            return Err(SurfaceError::BadEulerCharacteristic { chi, orientable });
        }
        if orientable {
            if euler_genus % 2 != 0 {
                return Err(SurfaceError::BadEulerCharacteristic { chi, orientable });
            }
            Ok(Surface::orientable((euler_genus / 2) as u32))
        } else {
            Surface::non_orientable(euler_genus as u32)
                .map_err(|_| SurfaceError::BadEulerCharacteristic { chi, orientable })
        }
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn euler_characteristic(&self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        }
    }

    pub fn euler_genus(&self) -> i64 {
        2 - self.euler_characteristic()
    }
}

/// Euler characteristic of `s`.
pub fn euler_characteristic(s: Surface) -> i64 {
    s.euler_characteristic()
}

fn ceil_div(num: u64, den: u64) -> u64 {
    num.div_ceil(den)
}

/// Orientable genus of `K_{m,n}`: `⌈(m−2)(n−2)/4⌉`, defined for `m, n ≥ 2`.
pub fn kmn_genus(m: u32, n: u32) -> Result<u32, SurfaceError> {
    if m < 2 || n < 2 {
        return Err(SurfaceError::GenusDomain { m, n, min: 2 });
    }
    Ok(ceil_div((m as u64 - 2) * (n as u64 - 2), 4) as u32)
}

/// Non-orientable genus of `K_{m,n}`: `⌈(m−2)(n−2)/2⌉`, defined for `m, n ≥ 3`.
pub fn kmn_demigenus(m: u32, n: u32) -> Result<u32, SurfaceError> {
    if m < 3 || n < 3 {
        return Err(SurfaceError::GenusDomain { m, n, min: 3 });
    }
    Ok(ceil_div((m as u64 - 2) * (n as u64 - 2), 2) as u32)
}

/// Lower bound on the Euler genus of any cellular embedding of a connected
/// bipartite graph with `v` vertices and `e` edges.
///
/// Every face of such an embedding has length at least 4, so `F ≤ E/2`, and
/// Euler's formula gives `eg = 2 − V + E − F ≥ E/2 − V + 2`.
pub fn bipartite_euler_bound(v: u64, e: u64) -> u64 {
    // ⌈e/2⌉ − v + 2, clamped at zero
    let bound = ceil_div(e, 2) as i64 - v as i64 + 2;
    bound.max(0) as u64
}

/// Whether `sigma` can be reached from `gamma` by attaching handles or
/// crosscaps into faces.
///
/// Going from an orientable surface to a non-orientable one costs at least
/// one crosscap; nothing turns a non-orientable surface orientable again.
pub fn attachable(gamma: Surface, sigma: Surface) -> bool {
    match (gamma.orientable, sigma.orientable) {
        (true, true) => sigma.genus >= gamma.genus,
        (false, true) => false,
        (true, false) => sigma.euler_genus() > gamma.euler_genus(),
        (false, false) => sigma.euler_genus() >= gamma.euler_genus(),
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.orientable { 'S' } else { 'N' };
        write!(f, "{tag}{}", self.genus)
    }
}

impl FromStr for Surface {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SurfaceError::Parse(s.to_string());
        let mut chars = s.chars();
        let tag = chars.next().ok_or_else(bad)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let genus: u32 = digits.parse().map_err(|_| bad())?;
        match tag {
            'S' => Ok(Surface::orientable(genus)),
            'N' => Surface::non_orientable(genus),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Surface {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Surface {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_surfaces() -> Vec<Surface> {
        let mut out: Vec<Surface> = (0..4).map(Surface::orientable).collect();
        out.extend((1..7).map(|k| Surface::non_orientable(k).unwrap()));
        out
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(Surface::SPHERE), 2);
        assert_eq!(euler_characteristic(Surface::TORUS), 0);
        assert_eq!(euler_characteristic(Surface::PROJECTIVE_PLANE), 1);
        assert_eq!(Surface::KLEIN_BOTTLE.euler_genus(), 2);
    }

    #[test]
    fn genus_formulas() {
        assert_eq!(kmn_genus(3, 3).unwrap(), 1);
        assert_eq!(kmn_genus(4, 4).unwrap(), 1);
        for n in 2..12 {
            assert_eq!(kmn_genus(2, n).unwrap(), 0);
        }
        assert_eq!(kmn_demigenus(3, 3).unwrap(), 1);
        assert_eq!(kmn_demigenus(3, 4).unwrap(), 1);
        assert_eq!(kmn_demigenus(4, 4).unwrap(), 2);
        assert!(kmn_genus(1, 5).is_err());
        assert!(kmn_demigenus(2, 5).is_err());
    }

    #[test]
    fn euler_bound_examples() {
        assert_eq!(bipartite_euler_bound(6, 9), 1);
        assert_eq!(bipartite_euler_bound(4, 4), 0);
        assert_eq!(bipartite_euler_bound(8, 16), 2);
        assert_eq!(bipartite_euler_bound(3, 1), 0);
    }

    #[test]
    fn formulas_never_beat_euler_bound() {
        for m in 2..=8u32 {
            for n in 2..=8u32 {
                let bound = bipartite_euler_bound((m + n) as u64, (m * n) as u64) as i64;
                let g = kmn_genus(m, n).unwrap() as i64;
                assert!(2 * g >= bound, "K_{m},{n}: 2g={} < {bound}", 2 * g);
                if m >= 3 && n >= 3 {
                    assert!(kmn_demigenus(m, n).unwrap() as i64 >= bound);
                }
            }
        }
    }

    #[test]
    fn attachable_examples() {
        assert!(attachable(Surface::SPHERE, Surface::TORUS));
        assert!(!attachable(Surface::TORUS, Surface::SPHERE));
        assert!(!attachable(Surface::TORUS, Surface::KLEIN_BOTTLE));
        assert!(attachable(
            Surface::TORUS,
            Surface::non_orientable(3).unwrap()
        ));
        assert!(attachable(Surface::SPHERE, Surface::PROJECTIVE_PLANE));
        assert!(!attachable(Surface::PROJECTIVE_PLANE, Surface::TORUS));
    }

    // Cross-check of the orientable -> non-orientable rule against the
    // classification: S_g # N_1 = N_{2g+1}, and N_k # T = N_{k+2}.
    #[test]
    fn attachable_matches_connected_sums() {
        for g in 0..4u32 {
            let s = Surface::orientable(g);
            assert!(attachable(s, Surface::non_orientable(2 * g + 1).unwrap()));
            if g > 0 {
                assert!(!attachable(s, Surface::non_orientable(2 * g).unwrap()));
            }
        }
        for k in 1..5u32 {
            let n = Surface::non_orientable(k).unwrap();
            assert!(attachable(n, Surface::non_orientable(k + 1).unwrap()));
            assert!(attachable(n, Surface::non_orientable(k + 2).unwrap()));
            assert!(!attachable(
                n,
                Surface::non_orientable(k - 1).unwrap_or(Surface::SPHERE)
            ));
        }
    }

    #[test]
    fn attachable_is_a_preorder_and_monotone() {
        let all = sample_surfaces();
        for &a in &all {
            assert!(attachable(a, a));
            for &b in &all {
                if attachable(a, b) {
                    assert!(b.euler_genus() >= a.euler_genus());
                }
                for &c in &all {
                    if attachable(a, b) && attachable(b, c) {
                        assert!(attachable(a, c), "{a} -> {b} -> {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn text_form() {
        for s in sample_surfaces() {
            assert_eq!(s.to_string().parse::<Surface>().unwrap(), s);
        }
        assert_eq!("N2".parse::<Surface>().unwrap(), Surface::KLEIN_BOTTLE);
        for bad in ["", "S", "N0", "T1", "S-1", "s1", "S1x"] {
            assert!(bad.parse::<Surface>().is_err(), "{bad}");
        }
    }

    #[test]
    fn from_chi() {
        assert_eq!(
            Surface::from_euler_characteristic(2, true).unwrap(),
            Surface::SPHERE
        );
        assert_eq!(
            Surface::from_euler_characteristic(0, false).unwrap(),
            Surface::KLEIN_BOTTLE
        );
        assert!(Surface::from_euler_characteristic(1, true).is_err());
        assert!(Surface::from_euler_characteristic(2, false).is_err());
        assert!(Surface::from_euler_characteristic(3, true).is_err());
    }
}
