//! Semicircle families of the continuum.
//!
//! Level 0 holds the upper semicircles centred at `1/2` joining each point to
//! its complement. Level `k ≥ 1` holds the lower semicircles centred at
//! `x_k = 5/(2·3^k)` joining each sequence of level `k` to its hat.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::binseq::BinSeq;
use crate::cantor::{embed, format_rational, parse_rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    Upper,
    Lower,
}

/// Abscissa of the common centre of all level-`k` arcs.
pub fn center_x(k: usize) -> BigRational {
    if k == 0 {
        return BigRational::new(1.into(), 2.into());
    }
    let mut word = vec![false; k];
    word[k - 1] = true;
    let witness = BinSeq::eventually_constant(word, false);
    let partner = witness.hat().expect("witness has level k");
    let center = (embed(&witness).into_value() + embed(&partner).into_value())
        / BigRational::from_integer(2.into());
    debug_assert_eq!(center, closed_form_center(k));
    center
}

const CACHED_LEVELS: usize = 64;

fn cached_center(k: usize) -> BigRational {
    static CENTERS: OnceLock<Vec<BigRational>> = OnceLock::new();
    match CENTERS
        .get_or_init(|| (0..CACHED_LEVELS).map(center_x).collect())
        .get(k)
    {
        Some(c) => c.clone(),
        None => center_x(k),
    }
}

fn closed_form_center(k: usize) -> BigRational {
    BigRational::new(
        5.into(),
        BigInt::from(2u32) * BigInt::from(3u32).pow(k as u32),
    )
}

/// One semicircle, identified by its level and its ordered endpoints.
#[derive(Debug, Clone)]
pub struct Arc {
    level: usize,
    center: BigRational,
    radius: BigRational,
    half: Half,
    endpoints: (BinSeq, BinSeq),
}

/// The level-`k` arc through `s`.
pub fn make_arc(k: usize, s: &BinSeq) -> Result<Arc> {
    let partner = if k == 0 {
        s.complement()
    } else {
        let found = s.level();
        if found != Some(k) {
            return Err(Error::LevelMismatch {
                seq: s.to_string(),
                expected: k,
                found,
            });
        }
        s.hat()?
    };
    let (left, right) = if *s < partner {
        (s.clone(), partner)
    } else {
        (partner, s.clone())
    };
    let center = cached_center(k);
    let radius = (&center - embed(&left).into_value()).abs();
    Ok(Arc {
        level: k,
        center,
        radius,
        half: if k == 0 { Half::Upper } else { Half::Lower },
        endpoints: (left, right),
    })
}

impl Arc {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn center(&self) -> &BigRational {
        &self.center
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn half(&self) -> Half {
        self.half
    }

    /// `(left, right)` ordered by embedding.
    pub fn endpoints(&self) -> (&BinSeq, &BinSeq) {
        (&self.endpoints.0, &self.endpoints.1)
    }

    pub fn left(&self) -> &BinSeq {
        &self.endpoints.0
    }

    pub fn right(&self) -> &BinSeq {
        &self.endpoints.1
    }

    pub fn has_endpoint(&self, s: &BinSeq) -> bool {
        self.endpoints.0 == *s || self.endpoints.1 == *s
    }

    /// The endpoint opposite `s`, if `s` is an endpoint.
    pub fn other_end(&self, s: &BinSeq) -> Option<&BinSeq> {
        if self.endpoints.0 == *s {
            Some(&self.endpoints.1)
        } else if self.endpoints.1 == *s {
            Some(&self.endpoints.0)
        } else {
            None
        }
    }

    /// Recomputes every field from `(level, left)` and compares exactly.
    pub fn is_valid(&self) -> bool {
        match make_arc(self.level, &self.endpoints.0) {
            Ok(fresh) => {
                fresh.endpoints == self.endpoints
                    && fresh.center == self.center
                    && fresh.radius == self.radius
                    && fresh.half == self.half
            }
            Err(_) => false,
        }
    }

    /// Point at parameter `t` travelling from the left endpoint to the right
    /// one through the arc's half-plane.
    pub fn point_on(&self, t: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ParamOutOfRange(t));
        }
        let c = self.center.to_f64().unwrap_or(f64::NAN);
        let r = self.radius.to_f64().unwrap_or(f64::NAN);
        let theta = PI * (1.0 - t);
        let (x, y) = (c + r * theta.cos(), r * theta.sin());
        Ok(match self.half {
            Half::Upper => (x, y),
            Half::Lower => (x, -y),
        })
    }

    /// Representative sequence of the arc's path component: its left endpoint.
    pub fn class(&self) -> &BinSeq {
        &self.endpoints.0
    }
}

/// See [`Arc::class`].
pub fn arc_class(arc: &Arc) -> BinSeq {
    arc.class().clone()
}

impl PartialEq for Arc {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.endpoints == other.endpoints
    }
}

impl Eq for Arc {}

impl Hash for Arc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.level.hash(state);
        self.endpoints.hash(state);
    }
}

impl Ord for Arc {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level, &self.endpoints).cmp(&(other.level, &other.endpoints))
    }
}

impl PartialOrd for Arc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Serialize, Deserialize)]
struct ArcJson {
    level: usize,
    center: String,
    radius: String,
    half: Half,
    endpoints: [BinSeq; 2],
}

impl Serialize for Arc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ArcJson {
            level: self.level,
            center: format_rational(&self.center),
            radius: format_rational(&self.radius),
            half: self.half,
            endpoints: [self.endpoints.0.clone(), self.endpoints.1.clone()],
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Arc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ArcJson::deserialize(deserializer)?;
        let [left, right] = raw.endpoints;
        let arc = Arc {
            level: raw.level,
            center: parse_rational(&raw.center).map_err(D::Error::custom)?,
            radius: parse_rational(&raw.radius).map_err(D::Error::custom)?,
            half: raw.half,
            endpoints: (left, right),
        };
        if !arc.is_valid() {
            return Err(D::Error::custom(Error::InvalidArc(format!(
                "level {} arc {} -- {} is inconsistent",
                arc.level, arc.endpoints.0, arc.endpoints.1
            ))));
        }
        Ok(arc)
    }
}
