//! Seeded random symbols, including pairs built to satisfy (or avoid) each
//! structural condition.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::characterize::{classify_commute, classify_semicommute, Mode};
use crate::poly::{LaurentPoly, MonomialIndex};
use crate::scalar::{Rational, Scalar};

/// Stream derived from a run seed and a label, so that each suite or class
/// draws independently of the others.
pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(label.as_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

/// `p/q` with `0 < |p| ≤ 9`, `1 ≤ q ≤ 4`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    let mut p = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        p = -p;
    }
    Rational::new(p, rng.gen_range(1..=4))
}

/// Nonzero Gaussian rational; the imaginary part is present a third of the
/// time.
pub fn coefficient<R: Rng>(rng: &mut R) -> Scalar {
    let re = rational(rng);
    let im = if rng.gen_ratio(1, 3) {
        rational(rng)
    } else {
        Rational::zero()
    };
    Scalar::new(re, im)
}

fn from_exponents<R: Rng>(rng: &mut R, pool: &[MonomialIndex], terms: usize) -> LaurentPoly {
    let picked: Vec<_> = pool.choose_multiple(rng, terms.min(pool.len())).copied().collect();
    LaurentPoly::from_terms(picked.into_iter().map(|m| (m, coefficient(rng))))
}

fn quadrant(max_degree: i64, with_constant: bool) -> Vec<MonomialIndex> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for i in 0..=d {
            if d == 0 && !with_constant {
                continue;
            }
            out.push(MonomialIndex::new(i, d - i));
        }
    }
    out
}

/// Arbitrary Laurent polynomial, `|i| + |j| ≤ max_degree`.
pub fn laurent<R: Rng>(rng: &mut R, max_degree: u32) -> LaurentPoly {
    let d = max_degree as i64;
    let mut pool = Vec::new();
    for i in -d..=d {
        let rest = d - i.abs();
        for j in -rest..=rest {
            pool.push(MonomialIndex::new(i, j));
        }
    }
    let terms = rng.gen_range(1..=6);
    from_exponents(rng, &pool, terms)
}

/// Which variables a one-sided part may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    Both,
    Z1,
    Z2,
}

/// Holomorphic polynomial (constant allowed) with the given support.
pub fn holomorphic<R: Rng>(rng: &mut R, max_degree: u32, support: Support) -> LaurentPoly {
    let pool: Vec<_> = quadrant(max_degree as i64, true)
        .into_iter()
        .filter(|m| match support {
            Support::Both => true,
            Support::Z1 => m.j == 0,
            Support::Z2 => m.i == 0,
        })
        .collect();
    let terms = rng.gen_range(1..=3);
    from_exponents(rng, &pool, terms)
}

/// Conjugate-holomorphic polynomial with zero constant term.
pub fn antiholomorphic_zero<R: Rng>(rng: &mut R, max_degree: u32, support: Support) -> LaurentPoly {
    let pool: Vec<_> = quadrant(max_degree as i64, false)
        .into_iter()
        .filter(|m| match support {
            Support::Both => true,
            Support::Z1 => m.j == 0,
            Support::Z2 => m.i == 0,
        })
        .collect();
    let terms = rng.gen_range(1..=3);
    from_exponents(rng, &pool, terms).conjugate()
}

/// Possibly zero: parts are dropped a quarter of the time.
fn maybe<R: Rng>(rng: &mut R, f: impl FnOnce(&mut R) -> LaurentPoly) -> LaurentPoly {
    if rng.gen_ratio(1, 4) {
        LaurentPoly::zero()
    } else {
        f(rng)
    }
}

pub fn pluriharmonic<R: Rng>(rng: &mut R, max_degree: u32) -> LaurentPoly {
    let plus = maybe(rng, |r| holomorphic(r, max_degree, Support::Both));
    let minus = maybe(rng, |r| antiholomorphic_zero(r, max_degree, Support::Both));
    let f = plus.add(&minus);
    if f.is_zero() {
        holomorphic(rng, max_degree, Support::Both)
    } else {
        f
    }
}

fn split<R: Rng>(rng: &mut R, max_degree: u32, plus: Support, minus: Support) -> LaurentPoly {
    let p = maybe(rng, |r| holomorphic(r, max_degree, plus));
    let m = maybe(rng, |r| antiholomorphic_zero(r, max_degree, minus));
    p.add(&m)
}

/// Pair classes for random trials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    A,
    B,
    C,
    I,
    II,
    III,
    /// Fails every condition of the given mode.
    None(Mode),
}

impl PairClass {
    pub const ALL: [PairClass; 8] = [
        PairClass::A,
        PairClass::B,
        PairClass::C,
        PairClass::None(Mode::Semicommute),
        PairClass::I,
        PairClass::II,
        PairClass::III,
        PairClass::None(Mode::Commute),
    ];

    pub fn mode(self) -> Mode {
        match self {
            PairClass::A | PairClass::B | PairClass::C => Mode::Semicommute,
            PairClass::I | PairClass::II | PairClass::III => Mode::Commute,
            PairClass::None(m) => m,
        }
    }

    pub fn predicts_zero(self) -> bool {
        !matches!(self, PairClass::None(_))
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairClass::A => f.write_str("A"),
            PairClass::B => f.write_str("B"),
            PairClass::C => f.write_str("C"),
            PairClass::I => f.write_str("I"),
            PairClass::II => f.write_str("II"),
            PairClass::III => f.write_str("III"),
            PairClass::None(Mode::Semicommute) => f.write_str("none-semicommute"),
            PairClass::None(_) => f.write_str("none"),
        }
    }
}

impl FromStr for PairClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "A" => PairClass::A,
            "B" => PairClass::B,
            "C" => PairClass::C,
            "I" => PairClass::I,
            "II" => PairClass::II,
            "III" => PairClass::III,
            "none" | "none-commute" => PairClass::None(Mode::Commute),
            "none-semicommute" => PairClass::None(Mode::Semicommute),
            other => return Err(format!("unknown class `{other}`")),
        })
    }
}

/// Maximum symbol degree used for pair classes.
pub const PAIR_DEGREE: u32 = 3;

pub fn pair<R: Rng>(rng: &mut R, class: PairClass) -> (LaurentPoly, LaurentPoly) {
    let d = PAIR_DEGREE;
    match class {
        PairClass::A | PairClass::I => (
            split(rng, d, Support::Z1, Support::Z2),
            split(rng, d, Support::Z1, Support::Z2),
        ),
        PairClass::B | PairClass::II => (
            split(rng, d, Support::Z2, Support::Z1),
            split(rng, d, Support::Z2, Support::Z1),
        ),
        PairClass::C => {
            let c = if rng.gen_ratio(1, 8) {
                LaurentPoly::zero()
            } else {
                LaurentPoly::constant(coefficient(rng))
            };
            let g = pluriharmonic(rng, d);
            if rng.gen_bool(0.5) {
                (c, g)
            } else {
                (g, c)
            }
        }
        PairClass::III => {
            let f = pluriharmonic(rng, d);
            let g = f
                .scale(&coefficient(rng))
                .add(&LaurentPoly::constant(coefficient(rng)));
            if rng.gen_bool(0.5) {
                (f, g)
            } else {
                (g, f)
            }
        }
        PairClass::None(mode) => loop {
            let f = pluriharmonic(rng, d);
            let g = pluriharmonic(rng, d);
            let class = match mode {
                Mode::Semicommute => classify_semicommute(&f, &g),
                _ => classify_commute(&f, &g),
            }
            .expect("pluriharmonic by construction");
            if !class.predicts_zero() {
                return (f, g);
            }
        },
    }
}

/// Pairs whose four parts depend on `z1` alone. A fifth of the draws are
/// built to commute (dependent, or both anti-parts zero, or both
/// holomorphic parts constant).
pub fn case2_pair<R: Rng>(rng: &mut R) -> (LaurentPoly, LaurentPoly) {
    let d = PAIR_DEGREE;
    let part = |r: &mut R| split(r, d, Support::Z1, Support::Z1);
    match rng.gen_range(0..10) {
        0 => {
            let f = part(rng);
            let g = f
                .scale(&coefficient(rng))
                .add(&LaurentPoly::constant(coefficient(rng)));
            (f, g)
        }
        1 => (
            holomorphic(rng, d, Support::Z1),
            holomorphic(rng, d, Support::Z1),
        ),
        _ => (part(rng), part(rng)),
    }
}

/// Holomorphic pair of degree at most `max_degree`.
pub fn holomorphic_pair<R: Rng>(rng: &mut R, max_degree: u32) -> (LaurentPoly, LaurentPoly) {
    let pick = |r: &mut R| {
        let support = *[Support::Both, Support::Both, Support::Z1, Support::Z2]
            .choose(r)
            .expect("nonempty");
        holomorphic(r, max_degree, support)
    };
    (pick(rng), pick(rng))
}

/// Holomorphic pair satisfying a mixed-pair condition.
pub fn mixed_admissible_pair<R: Rng>(rng: &mut R, max_degree: u32) -> (LaurentPoly, LaurentPoly) {
    match rng.gen_range(0..3) {
        0 => (
            holomorphic(rng, max_degree, Support::Z1),
            holomorphic(rng, max_degree, Support::Z2),
        ),
        1 => (
            holomorphic(rng, max_degree, Support::Z2),
            holomorphic(rng, max_degree, Support::Z1),
        ),
        _ => {
            let c = LaurentPoly::constant(coefficient(rng));
            let h = holomorphic(rng, max_degree, Support::Both);
            if rng.gen_bool(0.5) {
                (c, h)
            } else {
                (h, c)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterize::classify_holo_pair;
    use crate::spaces::{is_holomorphic, is_pluriharmonic};

    #[test]
    fn streams_are_reproducible_and_separate() {
        let a: u64 = stream(7, "x").gen();
        let b: u64 = stream(7, "x").gen();
        let c: u64 = stream(7, "y").gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn coefficients_in_range() {
        let mut rng = stream(0, "coeff");
        for _ in 0..500 {
            let r = rational(&mut rng);
            assert!(!r.is_zero());
            assert!(r.numer().magnitude() <= &9u32.into());
            assert!(r.denom() <= 4.into());
        }
    }

    #[test]
    fn classes_satisfy_their_condition() {
        let mut rng = stream(1, "classes");
        for class in PairClass::ALL {
            for _ in 0..50 {
                let (f, g) = pair(&mut rng, class);
                assert!(is_pluriharmonic(&f) && is_pluriharmonic(&g));
                let c = match class.mode() {
                    Mode::Semicommute => classify_semicommute(&f, &g).unwrap(),
                    _ => classify_commute(&f, &g).unwrap(),
                };
                assert_eq!(c.predicts_zero(), class.predicts_zero(), "{class}: {f} / {g}");
            }
        }
    }

    #[test]
    fn holomorphic_generators() {
        let mut rng = stream(2, "holo");
        for _ in 0..100 {
            let (p, q) = holomorphic_pair(&mut rng, 3);
            assert!(is_holomorphic(&p) && is_holomorphic(&q));
            let (p, q) = mixed_admissible_pair(&mut rng, 3);
            assert!(classify_holo_pair(&p, &q, Mode::Mixed).unwrap().predicts_zero());
        }
    }
}
