//! Exact arithmetic over a prime field: polynomials, polynomial matrices,
//! Pfaffians, minors, Jacobians and dense linear algebra.

mod dense;
mod field;
mod matrix;
mod mono;
mod pfaffian;
mod poly;
mod polymat;
pub mod univariate;

pub use dense::{DenseSpace, LinearChange};
pub use field::{is_prime, FieldElem, Fp, DEFAULT_PRIME};
pub use matrix::{Matrix, Rref};
pub use mono::{binomial, monomial_count, monomials_of_degree, Mono, MAX_VARS};
pub use pfaffian::{pfaffian, principal_pfaffians, PfaffianEngine};
pub use poly::{linear_basis, Poly, Ring};
pub use polymat::{jacobian, minors_ideal, PolyMat};

/// Hash map with a fixed hasher, so iteration order never depends on the
/// process.
pub(crate) type Map<K, V> = hashbrown::HashMap<K, V, foldhash::fast::FixedState>;
pub(crate) type Set<K> = hashbrown::HashSet<K, foldhash::fast::FixedState>;

/// Subsets of `0..n` of size `k` as sorted index vectors, in lexicographic
/// order.
pub fn subsets(n: usize, k: usize) -> alloc::vec::Vec<alloc::vec::Vec<usize>> {
    let mut out = alloc::vec::Vec::new();
    if k > n {
        return out;
    }
    let mut cur: alloc::vec::Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}
