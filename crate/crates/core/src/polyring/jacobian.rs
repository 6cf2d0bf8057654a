use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::poly::HomogeneousPoly;
use crate::Error;

/// Determinant of the Jacobian matrix of a tuple: row i is component i,
/// column j is the partial derivative with respect to `x_j`. The tuple must
/// be square (as many components as variables) with one common degree d;
/// the determinant is homogeneous of degree `(n+1)(d-1)`.
///
/// Over a field of characteristic p the determinant can vanish identically
/// for birational maps, so callers must never use it as a rejection
/// criterion there; over Q a zero Jacobian does rule out dominance.
pub fn jacobian_det(polys: &[HomogeneousPoly]) -> Result<HomogeneousPoly, Error> {
    let first = polys.first().ok_or(Error::ArityMismatch {
        expected: 1,
        found: 0,
    })?;
    let m = first.nvars();
    if polys.len() != m {
        return Err(Error::ArityMismatch {
            expected: m,
            found: polys.len(),
        });
    }
    let field = first.field();
    let mut degree = None;
    for p in polys {
        if p.field() != field {
            return Err(Error::FieldMismatch);
        }
        if p.nvars() != m {
            return Err(Error::ArityMismatch {
                expected: m,
                found: p.nvars(),
            });
        }
        if !p.is_zero() {
            match degree {
                None => degree = Some(p.degree()),
                Some(d) if d != p.degree() => {
                    return Err(Error::DegreeMismatch {
                        expected: d,
                        found: p.degree(),
                    })
                }
                _ => {}
            }
        }
    }
    let d = degree.unwrap_or_else(|| first.degree());
    let out_degree = m * d.saturating_sub(1);

    let mut jac: Vec<Vec<HomogeneousPoly>> = Vec::with_capacity(m);
    for p in polys {
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            row.push(p.partial_derivative(j)?);
        }
        jac.push(row);
    }

    // Laplace expansion memoized on the set of used columns: minors[mask]
    // is the determinant of rows 0..popcount(mask) against columns in mask.
    let mut minors: BTreeMap<u32, HomogeneousPoly> = BTreeMap::new();
    minors.insert(
        0,
        HomogeneousPoly::constant(field, m, super::scalar::Scalar::one(field)),
    );
    for k in 1..=m {
        let mut next: BTreeMap<u32, HomogeneousPoly> = BTreeMap::new();
        for mask in 0..(1u32 << m) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut acc = HomogeneousPoly::zero(field, m, k * d.saturating_sub(1));
            // Expand along row k-1: the cofactor sign at ascending column
            // position pos is (-1)^((k-1)+pos).
            let mut sign_pos = (k - 1) % 2 == 0;
            let cols: Vec<usize> = (0..m).filter(|j| mask & (1 << j) != 0).collect();
            for j in cols {
                let sub = minors
                    .get(&(mask & !(1u32 << j)))
                    .expect("smaller minor computed");
                let entry = &jac[k - 1][j];
                if !entry.is_zero() && !sub.is_zero() {
                    let prod = entry.mul(sub)?;
                    acc = if sign_pos {
                        acc.add(&prod)?
                    } else {
                        acc.sub(&prod)?
                    };
                }
                sign_pos = !sign_pos;
            }
            next.insert(mask, acc);
        }
        minors = next;
    }
    let mut det = minors
        .remove(&((1u32 << m) - 1))
        .expect("full minor computed");
    // Normalize the nominal degree of a identically-zero determinant.
    if det.is_zero() {
        det = HomogeneousPoly::zero(field, m, out_degree);
    }
    Ok(det)
}
