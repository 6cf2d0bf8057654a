use alloc::vec::Vec;

use super::monomial::Monomial;
use super::poly::HomogeneousPoly;
use super::scalar::Scalar;
use crate::Error;

/// Monic gcd of a tuple of homogeneous polynomials (leading coefficient 1 in
/// the global graded-lex order). Zero entries are skipped; `Err(AllZero)` if
/// nothing is left.
///
/// The algorithm is the classical content / primitive-part recursion with a
/// primitive pseudo-remainder sequence in the highest active variable. All
/// intermediate polynomials of homogeneous inputs stay homogeneous, so the
/// computation never leaves the graded representation.
pub fn gcd_tuple(polys: &[HomogeneousPoly]) -> Result<HomogeneousPoly, Error> {
    let mut nonzero = polys.iter().filter(|p| !p.is_zero());
    let first = nonzero.next().ok_or(Error::AllZero)?;
    for p in polys {
        if p.field() != first.field() {
            return Err(Error::FieldMismatch);
        }
        if p.nvars() != first.nvars() {
            return Err(Error::ArityMismatch {
                expected: first.nvars(),
                found: p.nvars(),
            });
        }
    }
    let vmax = first.nvars().saturating_sub(1);
    let mut g = first.monic();
    for p in nonzero {
        if g.degree() == 0 {
            break;
        }
        g = gcd_rec(&g, p, vmax);
    }
    Ok(g.monic())
}

/// Convenience binary gcd.
pub fn gcd(a: &HomogeneousPoly, b: &HomogeneousPoly) -> Result<HomogeneousPoly, Error> {
    gcd_tuple(&[a.clone(), b.clone()])
}

/// Degree in a single variable (0 for the zero polynomial).
fn deg_in(p: &HomogeneousPoly, var: usize) -> usize {
    p.terms()
        .map(|(m, _)| m.exponent(var) as usize)
        .max()
        .unwrap_or(0)
}

/// Coefficient of `var^k` viewed in the full ring (the variable is absent
/// from the result). Homogeneous of degree `p.degree() - k`.
fn coeff_of(p: &HomogeneousPoly, var: usize, k: usize) -> HomogeneousPoly {
    let terms: Vec<(Monomial, Scalar)> = p
        .terms()
        .filter(|(m, _)| m.exponent(var) as usize == k)
        .map(|(m, c)| (m.with_exponent(var, 0), c.clone()))
        .collect();
    HomogeneousPoly::from_terms(p.field(), p.nvars(), p.degree() - k, terms)
        .expect("homogeneous coefficient extraction")
}

/// gcd of the `var`-coefficients; the "content" of `p` as a univariate
/// polynomial in `var`. Lives one recursion level down.
fn content(p: &HomogeneousPoly, var: usize, vmax: usize) -> HomogeneousPoly {
    debug_assert!(!p.is_zero());
    let mut cont: Option<HomogeneousPoly> = None;
    for k in 0..=deg_in(p, var) {
        let c = coeff_of(p, var, k);
        if c.is_zero() {
            continue;
        }
        cont = Some(match cont {
            None => c.monic(),
            Some(g) => {
                if g.degree() == 0 {
                    g
                } else {
                    gcd_rec(&g, &c, vmax)
                }
            }
        });
    }
    cont.expect("nonzero polynomial has a nonzero coefficient")
}

fn primitive_part(p: &HomogeneousPoly, var: usize, vmax: usize) -> HomogeneousPoly {
    let c = content(p, var, vmax);
    if c.degree() == 0 {
        // Content is monic, so a constant content is exactly 1.
        return p.clone();
    }
    p.divide_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` in `var`: eliminates the leading
/// `var`-power of `a` by cross-multiplication until deg_var(a) < deg_var(b).
fn pseudo_rem(a: &HomogeneousPoly, b: &HomogeneousPoly, var: usize) -> HomogeneousPoly {
    let db = deg_in(b, var);
    let lcb = coeff_of(b, var, db);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = deg_in(&r, var);
        if dr < db {
            break;
        }
        let lcr = coeff_of(&r, var, dr);
        let shift = HomogeneousPoly::term(
            r.field(),
            Monomial::one(r.nvars()).with_exponent(var, (dr - db) as u16),
            Scalar::one(r.field()),
        );
        // r <- lcb * r - lcr * var^(dr-db) * b ; leading terms cancel and
        // homogeneity is preserved (both sides have equal total degree).
        let left = r.mul(&lcb).expect("same ring");
        let right = b.mul(&lcr).expect("same ring").mul(&shift).expect("same ring");
        r = left.sub(&right).expect("degrees agree");
    }
    r
}

/// gcd of two nonzero polynomials supported on variables `0..=vmax`.
fn gcd_rec(a: &HomogeneousPoly, b: &HomogeneousPoly, vmax: usize) -> HomogeneousPoly {
    debug_assert!(!a.is_zero() && !b.is_zero());
    if a.degree() == 0 || b.degree() == 0 {
        return HomogeneousPoly::constant(a.field(), a.nvars(), Scalar::one(a.field()));
    }
    let da = deg_in(a, vmax);
    let db = deg_in(b, vmax);
    if vmax == 0 {
        // Homogeneous and supported on x0 alone: a single term each.
        let e = da.min(db);
        return HomogeneousPoly::term(
            a.field(),
            Monomial::one(a.nvars()).with_exponent(0, e as u16),
            Scalar::one(a.field()),
        );
    }
    match (da, db) {
        (0, 0) => gcd_rec(a, b, vmax - 1),
        // A divisor of a var-free polynomial is var-free, hence divides b
        // iff it divides every var-coefficient of b.
        (0, _) => gcd_rec(a, &content(b, vmax, vmax - 1), vmax - 1),
        (_, 0) => gcd_rec(&content(a, vmax, vmax - 1), b, vmax - 1),
        _ => {
            let ca = content(a, vmax, vmax - 1);
            let cb = content(b, vmax, vmax - 1);
            let c = if ca.degree() == 0 || cb.degree() == 0 {
                HomogeneousPoly::constant(a.field(), a.nvars(), Scalar::one(a.field()))
            } else {
                gcd_rec(&ca, &cb, vmax - 1)
            };
            let mut r0 = a.divide_exact(&ca).expect("content divides");
            let mut r1 = b.divide_exact(&cb).expect("content divides");
            if deg_in(&r0, vmax) < deg_in(&r1, vmax) {
                core::mem::swap(&mut r0, &mut r1);
            }
            // Primitive PRS: keep every remainder primitive in vmax.
            loop {
                let rem = pseudo_rem(&r0, &r1, vmax);
                if rem.is_zero() {
                    break;
                }
                r0 = r1;
                r1 = if deg_in(&rem, vmax) == 0 {
                    rem
                } else {
                    primitive_part(&rem, vmax, vmax - 1)
                };
                if deg_in(&r1, vmax) == 0 {
                    // Coprime as univariates in vmax; only content survives.
                    return c.monic();
                }
            }
            let g = primitive_part(&r1, vmax, vmax - 1);
            c.mul(&g).expect("same ring").monic()
        }
    }
}
