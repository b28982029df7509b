//! Gaussian elimination over F_q on dense row-major matrices.

use crate::gf::{Elem, Field};

/// Reduced row echelon form in place. Returns the pivot columns, in row
/// order. Columns are scanned in the order given by `col_order`.
fn rref_with_order(field: &Field, rows: &mut Vec<Vec<Elem>>, col_order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in col_order {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                // rows[i] -= factor * rows[r]
                let (pivot_row, other) = if i < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = rows.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (o, &p) in other.iter_mut().zip(pivot_row.iter()) {
                    *o = field.sub(*o, field.mul(factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Row-reduces `rows` (all of length `ncols`) and returns the nonzero rows
/// with their pivot columns.
pub fn rref(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let order: Vec<usize> = (0..ncols).collect();
    let mut m = rows.to_vec();
    let pivots = rref_with_order(field, &mut m, &order);
    (m, pivots)
}

pub fn rank(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> usize {
    rref(field, rows, ncols).1.len()
}

/// Basis of the right null space `{x : A x = 0}`.
pub fn nullspace(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let (m, pivots) = rref(field, rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0 as Elem; ncols];
            x[fc] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = field.neg(row[fc]);
            }
            x
        })
        .collect()
}

/// Reduced basis of the row space whose pivots are chosen from the last
/// column backwards. The row with the lowest pivot is, up to scaling, the
/// unique nonzero vector of the span whose highest nonzero coordinate is
/// smallest.
pub fn rref_from_back(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let order: Vec<usize> = (0..ncols).rev().collect();
    let mut m = rows.to_vec();
    let pivots = rref_with_order(field, &mut m, &order);
    (m, pivots)
}
