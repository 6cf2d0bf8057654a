use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient field descriptor: the rationals or a prime field.
///
/// Primality of the modulus is the caller's responsibility at this level;
/// entry points that accept a user-supplied modulus check it with
/// [`crate::census::is_prime_u64`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "q"),
            FieldKind::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An element of Q (arbitrary-precision, always in lowest terms with a
/// positive denominator) or of F_p (canonical representative in `[0, p)`).
///
/// Arithmetic between elements of different fields is a programming error
/// and panics; public operations validate fields before any scalar math.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldKind {
        match self {
            Scalar::Q(_) => FieldKind::Rational,
            Scalar::Fp { modulus, .. } => FieldKind::Prime(*modulus),
        }
    }

    pub fn zero(field: FieldKind) -> Scalar {
        Scalar::from_integer(field, 0)
    }

    pub fn one(field: FieldKind) -> Scalar {
        Scalar::from_integer(field, 1)
    }

    pub fn from_integer(field: FieldKind, v: i64) -> Scalar {
        match field {
            FieldKind::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            FieldKind::Prime(p) => Scalar::Fp {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// `num/den` over the given field; `den` must be invertible.
    pub fn from_ratio(field: FieldKind, num: i64, den: i64) -> Option<Scalar> {
        if den == 0 {
            return None;
        }
        match field {
            FieldKind::Rational => Some(Scalar::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldKind::Prime(_) => {
                let d = Scalar::from_integer(field, den);
                if d.is_zero() {
                    return None;
                }
                Some(&Scalar::from_integer(field, num) * &d.inverse())
            }
        }
    }

    /// `num/den` with arbitrary-precision parts; `den` must be invertible.
    pub fn from_big_ratio(field: FieldKind, num: BigInt, den: BigInt) -> Option<Scalar> {
        if den.is_zero() {
            return None;
        }
        match field {
            FieldKind::Rational => Some(Scalar::Q(BigRational::new(num, den))),
            FieldKind::Prime(p) => {
                let pm = BigInt::from(p);
                let reduce = |v: BigInt| -> u64 {
                    let r = ((v % &pm) + &pm) % &pm;
                    u64::try_from(r).expect("residue fits")
                };
                let n = reduce(num);
                let d = reduce(den);
                if d == 0 {
                    return None;
                }
                let den_inv = Scalar::Fp {
                    value: d,
                    modulus: p,
                }
                .inverse();
                Some(
                    &Scalar::Fp {
                        value: n,
                        modulus: p,
                    } * &den_inv,
                )
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero; callers check first.
    pub fn inverse(&self) -> Scalar {
        match self {
            Scalar::Q(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Q(r.recip())
            }
            Scalar::Fp { value, modulus } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::Fp {
                    value: mod_inverse(*value, *modulus),
                    modulus: *modulus,
                }
            }
        }
    }

    /// Rational value as f64 (metric reporting only). None over F_p.
    pub fn to_f64(&self) -> Option<f64> {
        match self {
            Scalar::Q(r) => r.to_f64(),
            Scalar::Fp { .. } => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

/// Extended-Euclid inverse of `a` modulo prime `p`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert!(r0 == 1, "non-invertible element: gcd {r0}");
    t0.rem_euclid(p as i128) as u64
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl core::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: add_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl core::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl core::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl core::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical text form: `num` or `num/den` over Q, the canonical
    /// representative over F_p. Round-trips through the shared grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Absolute-value text of a rational, with its sign returned separately.
/// Used by the polynomial printer to emit `a - b` rather than `a + -b`.
pub(crate) fn display_signed(s: &Scalar) -> (bool, String) {
    use alloc::string::ToString;
    match s {
        Scalar::Q(r) => (r.is_negative(), {
            let a = r.abs();
            if a.denom().is_one() {
                a.numer().to_string()
            } else {
                alloc::format!("{}/{}", a.numer(), a.denom())
            }
        }),
        Scalar::Fp { value, .. } => (false, value.to_string()),
    }
}
