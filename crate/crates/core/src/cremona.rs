//! Certified birational self-maps of P^n.
//!
//! Birationality is decided by exhibiting an explicit inverse: a reduced
//! degree-d tuple f is birational iff some tuple g satisfies
//! `g o f = a * (x0 : ... : xn)` with a nonzero form a (the certificate
//! cofactor). The inverse of a reduced degree-d map has reduced degree at
//! most d^(n-1), so a finite sweep of candidate degrees is complete.
//!
//! Candidate inverses of a fixed degree e form the kernel of an exact
//! linear system (the pairwise proportionality conditions of `g o f`
//! against the identity); kernel vectors are then confirmed by explicit
//! substitution. Over Q a vanishing Jacobian rules the map out before the
//! sweep; over F_p the Jacobian is never consulted, since inseparable
//! birational maps with zero Jacobian exist there.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::polyring::{jacobian_det, FieldKind, HomogeneousPoly, Monomial, Scalar};
use crate::wspace::{multiple_of_identity_cofactor, MapTuple};
use crate::{linalg, Error};

/// Fixed seed of the auxiliary kernel-combination search; makes every
/// certification run reproducible.
const COMBINATION_SEED: u64 = 0x4352_454d_4f4e_4131;
/// Number of pseudo-random kernel combinations tried after the plain basis
/// vectors.
const COMBINATION_TRIES: usize = 32;

/// A birational self-map of P^n, stored with an explicit certificate:
/// `inverse o forward = cofactor * identity` (before any reduction), with a
/// nonzero cofactor. Both tuples are reduced and canonical, and the inverse
/// has the minimal possible degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CremonaMap {
    forward: MapTuple,
    inverse: MapTuple,
    cofactor: HomogeneousPoly,
}

/// Outcome of a certification attempt, with the characteristic-zero
/// Jacobian signal preserved for reporting: a map can fail every candidate
/// degree while having a nonzero Jacobian (it is then dominant but not
/// birational, like the coordinate squaring map).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyOutcome {
    Birational(CremonaMap),
    NotBirational { jacobian_nonzero_char_zero: bool },
}

impl CremonaMap {
    /// Builds from a forward/inverse pair, normalizing both and
    /// re-deriving the certificate by explicit substitution. Rejects pairs
    /// whose composite is not a nonzero multiple of the identity and pairs
    /// that violate the inverse degree bound.
    pub fn from_parts(forward: MapTuple, inverse: MapTuple) -> Result<CremonaMap, Error> {
        if forward.field() != inverse.field() {
            return Err(Error::FieldMismatch);
        }
        if forward.n() != inverse.n() {
            return Err(Error::ArityMismatch {
                expected: forward.n(),
                found: inverse.n(),
            });
        }
        let forward = forward.normalize().reduced;
        let inverse = inverse.normalize().reduced;
        let n = forward.n();
        let bound_fwd = degree_bound(forward.degree(), n);
        let bound_inv = degree_bound(inverse.degree(), n);
        if inverse.degree() > bound_fwd {
            return Err(Error::DegreeBoundViolated {
                degree: inverse.degree(),
                bound: bound_fwd,
            });
        }
        if forward.degree() > bound_inv {
            return Err(Error::DegreeBoundViolated {
                degree: forward.degree(),
                bound: bound_inv,
            });
        }
        let cofactor = compose_cofactor(&inverse, &forward).ok_or(Error::CertificateInvalid)?;
        Ok(CremonaMap {
            forward,
            inverse,
            cofactor,
        })
    }

    pub fn forward(&self) -> &MapTuple {
        &self.forward
    }

    pub fn inverse_tuple(&self) -> &MapTuple {
        &self.inverse
    }

    /// The certificate form a with `inverse o forward = a * identity`.
    pub fn cofactor(&self) -> &HomogeneousPoly {
        &self.cofactor
    }

    pub fn n(&self) -> usize {
        self.forward.n()
    }

    pub fn field(&self) -> FieldKind {
        self.forward.field()
    }

    /// Degree of the reduced forward tuple (the true degree of the map).
    pub fn degree(&self) -> usize {
        self.forward.degree()
    }

    /// Re-checks the stored certificate by explicit substitution.
    pub fn verify_certificate(&self) -> Result<(), Error> {
        match compose_cofactor(&self.inverse, &self.forward) {
            Some(a) if a == self.cofactor => Ok(()),
            _ => Err(Error::CertificateInvalid),
        }
    }

    /// The identity map of P^n.
    pub fn identity(field: FieldKind, n: usize) -> CremonaMap {
        let id = MapTuple::identity(field, n);
        CremonaMap::from_parts(id.clone(), id).expect("identity certifies")
    }

    /// The standard quadratic involution of P^2,
    /// (x1*x2 : x0*x2 : x0*x1); its own inverse with cofactor x0*x1*x2.
    pub fn standard_quadratic(field: FieldKind) -> CremonaMap {
        let s = standard_quadratic_tuple(field);
        CremonaMap::from_parts(s.clone(), s).expect("involution certifies")
    }

    /// The linear map of P^n given by an invertible (n+1)x(n+1) matrix
    /// acting on coordinates (row i gives component i).
    pub fn linear_from_matrix(field: FieldKind, rows: &[Vec<Scalar>]) -> Result<CremonaMap, Error> {
        let m = rows.len();
        if m < 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: m,
            });
        }
        let mut comps = Vec::with_capacity(m);
        for row in rows {
            if row.len() != m {
                return Err(Error::ArityMismatch {
                    expected: m,
                    found: row.len(),
                });
            }
            comps.push(HomogeneousPoly::from_terms(
                field,
                m,
                1,
                row.iter()
                    .enumerate()
                    .map(|(j, c)| (Monomial::variable(m, j), c.clone())),
            )?);
        }
        let t = MapTuple::new(comps).map_err(|e| match e {
            Error::AllZero => Error::SingularMatrix,
            other => other,
        })?;
        match certify_birational(&t) {
            Some(map) => Ok(map),
            None => Err(Error::SingularMatrix),
        }
    }

    /// A de Jonquieres shear of P^2 determined by a form q(x0, x2) of
    /// degree m >= 1 not involving x1:
    /// `(x0^m : x0^(m-1)*x1 + q : x0^(m-1)*x2)`. Its inverse is the shear
    /// by -q, with certificate cofactor x0^(m^2 - 1).
    pub fn de_jonquieres_shear(field: FieldKind, q: &HomogeneousPoly) -> Result<CremonaMap, Error> {
        if q.nvars() != 3 {
            return Err(Error::ArityMismatch {
                expected: 3,
                found: q.nvars(),
            });
        }
        if q.field() != field {
            return Err(Error::FieldMismatch);
        }
        if q.is_zero() || q.degree() == 0 {
            return Err(Error::Unsupported(alloc::string::String::from(
                "shear form must be nonzero of degree at least 1",
            )));
        }
        if q.terms().any(|(m, _)| m.exponent(1) > 0) {
            return Err(Error::Unsupported(alloc::string::String::from(
                "shear form must not involve x1",
            )));
        }
        let m = q.degree();
        let shear = |sign: bool| -> Result<MapTuple, Error> {
            let x0 = HomogeneousPoly::variable(field, 3, 0)?;
            let x1 = HomogeneousPoly::variable(field, 3, 1)?;
            let x2 = HomogeneousPoly::variable(field, 3, 2)?;
            let x0m1 = x0.pow(m - 1);
            let middle = if sign {
                x0m1.mul(&x1)?.add(q)?
            } else {
                x0m1.mul(&x1)?.sub(q)?
            };
            MapTuple::new(vec![x0.pow(m), middle, x0m1.mul(&x2)?])
        };
        CremonaMap::from_parts(shear(true)?, shear(false)?)
    }

    /// The inverse map; swaps the tuples and re-derives the certificate.
    pub fn inverse(&self) -> Result<CremonaMap, Error> {
        CremonaMap::from_parts(self.inverse.clone(), self.forward.clone())
    }

    /// The composite `self o other` (apply `other` first), certified with
    /// the composed inverse `other^-1 o self^-1`.
    pub fn compose(&self, other: &CremonaMap) -> Result<CremonaMap, Error> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::ArityMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        let fwd = substitute_tuple(&self.forward, &other.forward)?;
        let inv = substitute_tuple(&other.inverse, &self.inverse)?;
        CremonaMap::from_parts(fwd, inv)
    }

    /// Image of a projective point; `None` at base points of the reduced
    /// forward tuple, error on the zero vector.
    pub fn apply_to_point(&self, point: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
        self.forward.eval_point(point)
    }
}

/// The reduced tuple of the standard quadratic involution of P^2.
pub fn standard_quadratic_tuple(field: FieldKind) -> MapTuple {
    let one = Scalar::one(field);
    let m = |a: &[u16]| HomogeneousPoly::term(field, Monomial::new(a), one.clone());
    MapTuple::new(vec![m(&[0, 1, 1]), m(&[1, 0, 1]), m(&[1, 1, 0])]).expect("valid tuple")
}

/// Degree of the reduced representative of a tuple's map.
pub fn true_degree(t: &MapTuple) -> usize {
    t.normalize().reduced.degree()
}

/// `d^(n-1)`, the proven bound on the reduced degree of the inverse of a
/// reduced degree-d birational map of P^n.
pub fn degree_bound(d: usize, n: usize) -> usize {
    d.pow((n.max(1) - 1) as u32)
}

/// Decides birationality of the class of `t`, returning the certified map
/// of its reduced representative.
pub fn certify_birational(t: &MapTuple) -> Option<CremonaMap> {
    match certify_birational_detailed(t) {
        CertifyOutcome::Birational(map) => Some(map),
        CertifyOutcome::NotBirational { .. } => None,
    }
}

/// Certification with the characteristic-zero Jacobian signal exposed.
pub fn certify_birational_detailed(t: &MapTuple) -> CertifyOutcome {
    let f = t.normalize().reduced;
    let n = f.n();
    let d = f.degree();
    if d == 0 {
        // A constant tuple collapses P^n to a point.
        return CertifyOutcome::NotBirational {
            jacobian_nonzero_char_zero: false,
        };
    }
    let mut jacobian_nonzero_char_zero = false;
    if f.field() == FieldKind::Rational {
        let jac = jacobian_det(f.components()).expect("square tuple");
        if jac.is_zero() {
            // Exact rejection: over Q a dominant map has nonzero Jacobian.
            return CertifyOutcome::NotBirational {
                jacobian_nonzero_char_zero: false,
            };
        }
        jacobian_nonzero_char_zero = true;
    }
    for e in 1..=degree_bound(d, n) {
        if let Some(map) = try_inverse_of_degree(&f, e) {
            return CertifyOutcome::Birational(map);
        }
    }
    CertifyOutcome::NotBirational {
        jacobian_nonzero_char_zero,
    }
}

/// Searches for an inverse of exact degree e by solving the linear
/// proportionality system and confirming kernel candidates by explicit
/// substitution.
fn try_inverse_of_degree(f: &MapTuple, e: usize) -> Option<CremonaMap> {
    let n = f.n();
    let nvars = n + 1;
    let d = f.degree();
    let field = f.field();
    let mus = Monomial::all_of_degree(nvars, e);
    let nb = mus.len();
    // Images of the candidate monomials under f: substitute(mu, f).
    let images: Vec<HomogeneousPoly> = mus
        .iter()
        .map(|mu| {
            HomogeneousPoly::term(field, mu.clone(), Scalar::one(field))
                .substitute(f.components())
                .expect("tuple substitution")
        })
        .collect();

    // Unknowns: coefficients c[i][mu] of the candidate inverse components.
    // Conditions: for all i < j, sum_mu c[i][mu] * images[mu] * x_j equals
    // sum_mu c[j][mu] * images[mu] * x_i, coefficient by coefficient.
    let ncols = nvars * nb;
    let row_monomials = Monomial::all_of_degree(nvars, e * d + 1);
    let row_index: alloc::collections::BTreeMap<&Monomial, usize> =
        row_monomials.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..nvars {
        for j in (i + 1)..nvars {
            let mut block = vec![vec![Scalar::zero(field); ncols]; row_monomials.len()];
            for (mi, img) in images.iter().enumerate() {
                for (m, c) in img.terms() {
                    // + c[i][mu] * (img * x_j)
                    let r = row_index[&m.mul(&Monomial::variable(nvars, j))];
                    let col = i * nb + mi;
                    let v = &block[r][col] + c;
                    block[r][col] = v;
                    // - c[j][mu] * (img * x_i)
                    let r = row_index[&m.mul(&Monomial::variable(nvars, i))];
                    let col = j * nb + mi;
                    let v = &block[r][col] - c;
                    block[r][col] = v;
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|s| !s.is_zero())));
        }
    }
    let basis = linalg::nullspace(field, &rows, ncols);
    if basis.is_empty() {
        return None;
    }

    let build_and_check = |coeffs: &[Scalar]| -> Option<CremonaMap> {
        let mut comps = Vec::with_capacity(nvars);
        for i in 0..nvars {
            let p = HomogeneousPoly::from_terms(
                field,
                nvars,
                e,
                mus.iter()
                    .enumerate()
                    .map(|(k, m)| (m.clone(), coeffs[i * nb + k].clone())),
            )
            .expect("homogeneous candidate");
            comps.push(p);
        }
        let g = MapTuple::new(comps).ok()?;
        // Explicit substitution confirms the certificate.
        let composed: Vec<HomogeneousPoly> = g
            .components()
            .iter()
            .map(|gi| gi.substitute(f.components()).expect("tuple substitution"))
            .collect();
        let a = multiple_of_identity_cofactor(&composed)?;
        if a.is_zero() {
            return None;
        }
        Some(CremonaMap::from_parts(f.clone(), g).expect("verified candidate"))
    };

    for v in &basis {
        if let Some(map) = build_and_check(v) {
            return Some(map);
        }
    }
    if basis.len() > 1 {
        // Deterministic pseudo-random combinations of the kernel basis; a
        // best-effort safeguard should no single basis vector certify.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(COMBINATION_SEED);
        for _ in 0..COMBINATION_TRIES {
            let mut combo = vec![Scalar::zero(field); ncols];
            let mut any = false;
            for v in &basis {
                let c = random_scalar(field, &mut rng);
                if c.is_zero() {
                    continue;
                }
                any = true;
                for (slot, entry) in combo.iter_mut().zip(v) {
                    let add = entry * &c;
                    *slot = &*slot + &add;
                }
            }
            if !any || combo.iter().all(|s| s.is_zero()) {
                continue;
            }
            if let Some(map) = build_and_check(&combo) {
                return Some(map);
            }
        }
    }
    None
}

fn random_scalar(field: FieldKind, rng: &mut rand_chacha::ChaCha8Rng) -> Scalar {
    match field {
        // Small integers keep the exact arithmetic cheap.
        FieldKind::Rational => Scalar::from_integer(field, (rng.next_u32() % 9) as i64 - 4),
        FieldKind::Prime(p) => Scalar::from_integer(field, (rng.next_u64() % p) as i64),
    }
}

/// Raw composite `outer o inner` as a tuple (substitution, then canonical
/// form); not reduced.
pub fn substitute_tuple(outer: &MapTuple, inner: &MapTuple) -> Result<MapTuple, Error> {
    let comps = outer
        .components()
        .iter()
        .map(|p| p.substitute(inner.components()))
        .collect::<Result<Vec<_>, _>>()?;
    MapTuple::new(comps)
}

/// Certificate cofactor of a composable pair: the form a with
/// `outer o inner = a * identity`, when it exists and is nonzero.
fn compose_cofactor(outer: &MapTuple, inner: &MapTuple) -> Option<HomogeneousPoly> {
    let comps: Vec<HomogeneousPoly> = outer
        .components()
        .iter()
        .map(|p| p.substitute(inner.components()).ok())
        .collect::<Option<Vec<_>>>()?;
    let a = multiple_of_identity_cofactor(&comps)?;
    if a.is_zero() {
        None
    } else {
        Some(a)
    }
}
