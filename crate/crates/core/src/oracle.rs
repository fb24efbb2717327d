//! Brute-force oracles: c_n(a) recomputed from the combinatorial models by
//! explicit enumeration. These never touch the engine's convolution tables,
//! so agreement is an independent check on the recurrence.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::params::ParamVec;
use crate::rational::{Int, Rational};

const TREE_CAP: usize = 10;
const PATH_CAP: usize = 8;

/// Weighted count of plane rooted trees with n + 1 leaves whose internal
/// nodes have arity in 2..=r, each node of arity j contributing a factor a_j.
/// For nonnegative integer parameters this is the labeled-tree count.
/// Enumerates arity splits per node (memoized on leaf count only); capped at
/// n <= 10.
pub fn weighted_tree_sum(a: &ParamVec, n: usize) -> Result<Rational> {
    if n > TREE_CAP {
        return Err(Error::domain(format!(
            "tree oracle is capped at n <= {TREE_CAP}"
        )));
    }
    let mut memo: Vec<Option<Rational>> = vec![None; n + 2];
    Ok(tree_weight(a, n + 1, &mut memo))
}

fn tree_weight(a: &ParamVec, leaves: usize, memo: &mut Vec<Option<Rational>>) -> Rational {
    if leaves == 1 {
        return Rational::one();
    }
    if let Some(v) = &memo[leaves] {
        return v.clone();
    }
    let mut total = Rational::zero();
    for j in 2..=a.r().min(leaves) {
        let aj = a.a(j);
        if aj.is_zero() {
            continue;
        }
        total += aj * composition_sum(a, j, leaves, memo);
    }
    memo[leaves] = Some(total.clone());
    total
}

/// Sum over ordered splits of `leaves` into `parts` positive pieces of the
/// product of subtree weights.
fn composition_sum(
    a: &ParamVec,
    parts: usize,
    leaves: usize,
    memo: &mut Vec<Option<Rational>>,
) -> Rational {
    if parts == 1 {
        return tree_weight(a, leaves, memo);
    }
    let mut total = Rational::zero();
    for first in 1..=(leaves - (parts - 1)) {
        let head = tree_weight(a, first, memo);
        if head.is_zero() {
            continue;
        }
        total += head * composition_sum(a, parts - 1, leaves - first, memo);
    }
    total
}

/// Count of labeled lattice paths: steps u in {1, -1, ..., 1-r} with all
/// partial sums positive, total sum 1, exactly n + 1 up-steps, and a step of
/// size 1 - j carrying one of a_j labels. Requires nonnegative integer
/// parameters; capped at n <= 8.
pub fn labeled_path_count(a: &ParamVec, n: usize) -> Result<Int> {
    if n > PATH_CAP {
        return Err(Error::domain(format!(
            "path oracle is capped at n <= {PATH_CAP}"
        )));
    }
    let weights: Vec<Int> = a
        .coeffs()
        .iter()
        .map(|c| {
            if !c.denom().is_one() || c.numer() < &Int::zero() {
                Err(Error::domain(
                    "path oracle needs nonnegative integer parameters",
                ))
            } else {
                Ok(c.numer().clone())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(count_paths(&weights, 0, n as i64 + 1))
}

fn count_paths(weights: &[Int], sum: i64, ups_left: i64) -> Int {
    if ups_left == 0 && sum == 1 {
        // no step can extend this path: downs would break positivity
        return Int::one();
    }
    let mut total = Int::zero();
    if ups_left > 0 {
        total += count_paths(weights, sum + 1, ups_left - 1);
    }
    for (idx, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        // weights[idx] is a_{idx+2}, a down-step of size idx + 1
        let drop = idx as i64 + 1;
        if sum - drop >= 1 {
            total += w * count_paths(weights, sum - drop, ups_left);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::moments_recurrence;
    use crate::rational::{rat, rat_int};

    #[test]
    fn symbolic_shape_of_c2() {
        // c_2(a) = a_3 + 2 a_2^2: probe the two monomials separately
        let a = ParamVec::new(vec![rat(3, 7), rat_int(0), rat_int(1)]).unwrap();
        // (a_2, 0, a_4): c_2 still a_3 + 2 a_2^2 = 2 * (3/7)^2
        assert_eq!(weighted_tree_sum(&a, 2).unwrap(), rat(18, 49));
        let a = ParamVec::new(vec![rat_int(0), rat(5, 3)]).unwrap();
        assert_eq!(weighted_tree_sum(&a, 2).unwrap(), rat(5, 3));
        let a = ParamVec::new(vec![rat(1, 2), rat(5, 3)]).unwrap();
        assert_eq!(weighted_tree_sum(&a, 2).unwrap(), rat(5, 3) + rat(1, 2));
    }

    #[test]
    fn single_leaf() {
        let a = ParamVec::from_ints(&[1, 1]).unwrap();
        assert_eq!(weighted_tree_sum(&a, 0).unwrap(), rat_int(1));
    }

    #[test]
    fn tree_sum_matches_engine() {
        let a = ParamVec::from_ints(&[1, 1]).unwrap();
        assert_eq!(weighted_tree_sum(&a, 4).unwrap(), rat_int(38));
        let a = ParamVec::new(vec![rat(1, 2), rat(-2, 3), rat(3, 4)]).unwrap();
        let m = moments_recurrence(&a, 8);
        for n in 0..=8 {
            assert_eq!(weighted_tree_sum(&a, n).unwrap(), m.terms[n], "n={n}");
        }
    }

    #[test]
    fn tree_cap_enforced() {
        let a = ParamVec::from_ints(&[1]).unwrap();
        assert!(weighted_tree_sum(&a, 11).is_err());
    }

    #[test]
    fn catalan_paths() {
        let a = ParamVec::from_ints(&[1]).unwrap();
        assert_eq!(labeled_path_count(&a, 3).unwrap(), Int::from(5));
    }

    #[test]
    fn dilated_catalan_paths() {
        // c_2(2) = 2^2 * 2 = 8
        let a = ParamVec::from_ints(&[2]).unwrap();
        assert_eq!(labeled_path_count(&a, 2).unwrap(), Int::from(8));
    }

    #[test]
    fn path_count_matches_tree_sum_on_integer_vectors() {
        for cs in [&[1, 2][..], &[0, 1][..], &[2, 0, 1][..], &[1, 1, 1][..]] {
            let a = ParamVec::from_ints(cs).unwrap();
            for n in 0..=6 {
                let paths = labeled_path_count(&a, n).unwrap();
                let trees = weighted_tree_sum(&a, n).unwrap();
                assert_eq!(Rational::from_integer(paths), trees, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn path_oracle_domain_checks() {
        let a = ParamVec::from_ints(&[1, 1, -1]).unwrap();
        assert!(labeled_path_count(&a, 3).is_err());
        let a = ParamVec::new(vec![rat(1, 2)]).unwrap();
        assert!(labeled_path_count(&a, 3).is_err());
        let a = ParamVec::from_ints(&[1]).unwrap();
        assert!(labeled_path_count(&a, 9).is_err());
    }
}
