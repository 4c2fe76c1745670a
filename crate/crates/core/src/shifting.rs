//! Monotone compression of partitions: `i`-shifts, iteration to a fixed
//! point, and the potential that certifies termination.
//!
//! An `i`-shift swaps the part labels of `x` and `x^i` for every pair with
//! `x_i = 0` whose labels are `(A,B)`, `(A,W)` or `(W,B)`, pushing `A`
//! upward and `B` downward. Pairs are disjoint, so all swaps of one
//! coordinate are applied simultaneously.

use alloc::vec::Vec;

use crate::cube::{CubeDim, Partition, Part, Vertex};
use crate::Result;

/// One applied shift: the coordinate and how many pairs it swapped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ShiftStep {
    pub coordinate: u32,
    pub swapped_pairs: u64,
}

/// Record of a full compression run. `steps` lists the nontrivial shifts
/// in application order.
#[derive(Clone, Debug)]
pub struct ShiftTrace {
    pub steps: Vec<ShiftStep>,
    pub initial: Partition,
    pub final_partition: Partition,
}

/// Apply the `i`-shift once; returns the shifted partition and the number
/// of swapped pairs.
pub fn i_shift(p: &Partition, i: u32) -> Result<(Partition, u64)> {
    let dim = p.dim();
    if i >= dim.n() {
        return Err(crate::Error::CoordinateOutOfRange { coordinate: i, n: dim.n() });
    }
    let mut a = p.a().clone();
    let mut b = p.b().clone();
    let mut swapped = 0u64;
    let k = 1u64 << i;
    for x in 0..dim.vertex_count() {
        if x & k != 0 {
            continue;
        }
        let lo = Vertex(x as u32);
        let hi = Vertex((x | k) as u32);
        let pair = (p.part_of(lo), p.part_of(hi));
        let qualifies = matches!(pair, (Part::A, Part::B) | (Part::A, Part::W) | (Part::W, Part::B));
        if !qualifies {
            continue;
        }
        swapped += 1;
        // exchange the labels of lo and hi
        match pair.0 {
            Part::A => {
                a.remove(lo);
                a.insert(hi);
            }
            Part::B => unreachable!(),
            Part::W => {}
        }
        match pair.1 {
            Part::B => {
                b.remove(hi);
                b.insert(lo);
            }
            Part::A => unreachable!(),
            Part::W => {}
        }
    }
    Ok((Partition::new(a, b)?, swapped))
}

/// Round-robin `i`-shifts for `i = 0..n` until a full pass changes
/// nothing. Terminates because every nontrivial shift strictly increases
/// [`shift_potential`], which is bounded by `n·2^n`.
pub fn compress(p: &Partition) -> (Partition, ShiftTrace) {
    let dim = p.dim();
    let mut current = p.clone();
    let mut steps = Vec::new();
    loop {
        let mut changed = false;
        for i in 0..dim.n() {
            let (next, swapped) = i_shift(&current, i).expect("valid coordinate");
            if swapped > 0 {
                steps.push(ShiftStep { coordinate: i, swapped_pairs: swapped });
                current = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let trace = ShiftTrace {
        steps,
        initial: p.clone(),
        final_partition: current.clone(),
    };
    (current, trace)
}

/// `Σ_{x∈A} |x| - Σ_{x∈B} |x|` with `|x|` the Hamming weight; strictly
/// increases on every nontrivial `i`-shift.
pub fn shift_potential(p: &Partition) -> i64 {
    let wa: i64 = p.a().iter().map(|x| x.weight() as i64).sum();
    let wb: i64 = p.b().iter().map(|x| x.weight() as i64).sum();
    wa - wb
}

/// Upper bound `n·2^n` on the potential, hence on the number of
/// nontrivial shifts in a compression.
pub fn potential_bound(dim: CubeDim) -> i64 {
    dim.n() as i64 * dim.vertex_count() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{CubeDim, VertexSet};
    use alloc::vec;

    fn dim(n: u32) -> CubeDim {
        CubeDim::new(n).unwrap()
    }

    fn partition(n: u32, a: &[u64], b: &[u64]) -> Partition {
        Partition::new(
            VertexSet::from_indices(dim(n), a).unwrap(),
            VertexSet::from_indices(dim(n), b).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn q1_single_swap() {
        let p = partition(1, &[0], &[1]);
        let (q, swapped) = i_shift(&p, 0).unwrap();
        assert_eq!(swapped, 1);
        assert_eq!(q.a(), &VertexSet::from_indices(dim(1), &[1]).unwrap());
        assert_eq!(q.b(), &VertexSet::from_indices(dim(1), &[0]).unwrap());
    }

    #[test]
    fn monotone_partition_is_fixed() {
        // A increasing, B decreasing: no qualifying pairs in any direction
        let p = partition(2, &[3, 1], &[0]);
        assert!(p.a().is_increasing());
        assert!(p.b().is_decreasing());
        for i in 0..2 {
            let (q, swapped) = i_shift(&p, i).unwrap();
            assert_eq!(swapped, 0);
            assert_eq!(&q, &p);
        }
    }

    #[test]
    fn q2_aw_pair_swaps() {
        // A={00}, B={11}, W={01,10}: the coordinate-0 pair (00,01) is (A,W)
        let p = partition(2, &[0], &[3]);
        let (q, swapped) = i_shift(&p, 0).unwrap();
        assert_eq!(swapped, 2); // (00,01) is (A,W); (10,11) is (W,B)
        assert_eq!(q.a(), &VertexSet::from_indices(dim(2), &[1]).unwrap());
        assert_eq!(q.b(), &VertexSet::from_indices(dim(2), &[2]).unwrap());
    }

    #[test]
    fn compress_q1() {
        let p = partition(1, &[0], &[1]);
        let (q, trace) = compress(&p);
        assert_eq!(trace.steps.len(), 1);
        assert!(q.a().is_increasing());
        assert!(q.b().is_decreasing());
        assert_eq!(q.a().size(), 1);
    }

    #[test]
    fn compress_already_stable() {
        let p = partition(2, &[3, 1, 2], &[]);
        let (_, trace) = compress(&p);
        assert_eq!(trace.steps.len(), 0);
    }

    #[test]
    fn potential_examples() {
        let p = partition(2, &[0, 1, 2, 3], &[]);
        assert_eq!(shift_potential(&p), 4);
        let q = partition(1, &[0], &[1]);
        assert_eq!(shift_potential(&q), -1);
    }

    #[test]
    fn shift_contract_exhaustive_q3() {
        // all 3^8 partitions: sizes preserved, potential strictly increases
        // on nontrivial shifts, per-coordinate cross boundary never grows
        let d = dim(3);
        for code in 0..6561u32 {
            let mut c = code;
            let mut labels = vec![Part::W; 8];
            for l in labels.iter_mut() {
                *l = match c % 3 {
                    0 => Part::A,
                    1 => Part::B,
                    _ => Part::W,
                };
                c /= 3;
            }
            let p = Partition::from_labels(d, &labels).unwrap();
            for i in 0..3 {
                let (q, swapped) = i_shift(&p, i).unwrap();
                assert_eq!(q.a().size(), p.a().size());
                assert_eq!(q.b().size(), p.b().size());
                if swapped > 0 {
                    assert!(shift_potential(&q) > shift_potential(&p));
                }
                for j in 0..3 {
                    let before = p.a().directional_cross_boundary_size(p.b(), j).unwrap();
                    let after = q.a().directional_cross_boundary_size(q.b(), j).unwrap();
                    assert!(after <= before);
                    if i == j {
                        assert_eq!(after, before);
                    }
                }
            }
        }
    }
}
