//! Seeded generators of random tables and chains for property checks and
//! the randomized DPI harness.
//!
//! Probability vectors are drawn uniformly from the simplex by normalizing
//! independent exponential draws.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conditional::TripleTable;
use crate::markov::{MarkovChain3, TransitionMatrix};
use crate::multitable::MultiTable;
use crate::multivariate::{MvChain, TransitionTensor};
use crate::support::DiscreteSupport;
use crate::table::{JointTable, ProbVector};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the probability simplex with `n` strictly positive
/// coordinates.
pub fn simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let draws: Vec<f64> = (0..n)
            .map(|_| -libm::log(1.0 - rng.random::<f64>()))
            .collect();
        let total: f64 = draws.iter().sum();
        if total > 0.0 && draws.iter().all(|&d| d > 0.0) {
            return draws.into_iter().map(|d| d / total).collect();
        }
    }
}

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Joint table with every cell positive.
pub fn table<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> JointTable {
    let p = simplex(rng, m * n);
    JointTable::from_dense(&p, DiscreteSupport::indexed(m), DiscreteSupport::indexed(n))
        .expect("simplex draws form a valid table")
}

/// Joint table where each cell is zero with probability `zero_fraction`
/// (at least one cell is kept).
pub fn sparse_table<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize, zero_fraction: f64) -> JointTable {
    let mut p = simplex(rng, m * n);
    let keep = rng.random_range(0..m * n);
    for (k, v) in p.iter_mut().enumerate() {
        if k != keep && rng.random::<f64>() < zero_fraction {
            *v = 0.0;
        }
    }
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= total);
    JointTable::from_dense(&p, DiscreteSupport::indexed(m), DiscreteSupport::indexed(n))
        .expect("renormalized draws form a valid table")
}

/// Product of two independent marginals.
pub fn product_table<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> JointTable {
    let px = simplex(rng, m);
    let py = simplex(rng, n);
    let p: Vec<f64> = px.iter().flat_map(|a| py.iter().map(move |b| a * b)).collect();
    JointTable::from_dense(&p, DiscreteSupport::indexed(m), DiscreteSupport::indexed(n))
        .expect("product of simplex draws is a valid table")
}

/// `Y = f(X)` for a random map `f` whose image has at least two values
/// (requires `m, n >= 2`).
pub fn functional_table<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> JointTable {
    assert!(m >= 2 && n >= 2, "functional tables need at least two rows and columns");
    let px = simplex(rng, m);
    let f: Vec<usize> = loop {
        let f: Vec<usize> = (0..m).map(|_| rng.random_range(0..n)).collect();
        if f.iter().any(|&v| v != f[0]) {
            break f;
        }
    };
    let mut p = vec![0.0; m * n];
    for (i, (&w, &j)) in px.iter().zip(&f).enumerate() {
        p[i * n + j] = w;
    }
    JointTable::from_dense(&p, DiscreteSupport::indexed(m), DiscreteSupport::indexed(n))
        .expect("functional table is valid")
}

pub fn transition<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> TransitionMatrix {
    let data: Vec<f64> = (0..m).flat_map(|_| simplex(rng, n)).collect();
    TransitionMatrix::from_dense(data, DiscreteSupport::indexed(m), DiscreteSupport::indexed(n))
        .expect("simplex rows are stochastic")
}

/// Chain `X → Y → Z` with each variable taking between 2 and `max_size`
/// values.
pub fn chain<R: Rng + ?Sized>(rng: &mut R, max_size: usize) -> MarkovChain3 {
    let max_size = max_size.max(2);
    let (m, n, l) = (
        rng.random_range(2..=max_size),
        rng.random_range(2..=max_size),
        rng.random_range(2..=max_size),
    );
    let source = ProbVector::new(simplex(rng, m), DiscreteSupport::indexed(m)).expect("simplex draw");
    MarkovChain3::new(source, transition(rng, m, n), transition(rng, n, l)).expect("shapes chain")
}

fn axis_shape<R: Rng + ?Sized>(rng: &mut R, max_axes: usize, max_axis: usize) -> Vec<usize> {
    let axes = rng.random_range(1..=max_axes.max(1));
    (0..axes).map(|_| rng.random_range(2..=max_axis.max(2))).collect()
}

/// Random tensor with the given axis shapes and every cell positive.
pub fn multi_table<R: Rng + ?Sized>(rng: &mut R, x_shape: &[usize], y_shape: &[usize]) -> MultiTable {
    let cells: usize = x_shape.iter().chain(y_shape).product();
    MultiTable::from_shape(simplex(rng, cells), x_shape, y_shape).expect("simplex tensor is valid")
}

/// Product tensor `P(i⃗)·P(j⃗)`.
pub fn product_multi_table<R: Rng + ?Sized>(rng: &mut R, x_shape: &[usize], y_shape: &[usize]) -> MultiTable {
    let px = simplex(rng, x_shape.iter().product());
    let py = simplex(rng, y_shape.iter().product());
    let p = px.iter().flat_map(|a| py.iter().map(move |b| a * b)).collect();
    MultiTable::from_shape(p, x_shape, y_shape).expect("product tensor is valid")
}

pub fn transition_tensor<R: Rng + ?Sized>(rng: &mut R, domain: &[usize], codomain: &[usize]) -> TransitionTensor {
    let m: usize = domain.iter().product();
    let n: usize = codomain.iter().product();
    let data = (0..m).flat_map(|_| simplex(rng, n)).collect();
    TransitionTensor::new(domain, codomain, data).expect("simplex rows are stochastic")
}

/// Group chain with 1..=`max_axes` axes per group and axis sizes in
/// 2..=`max_axis`.
pub fn mv_chain<R: Rng + ?Sized>(rng: &mut R, max_axes: usize, max_axis: usize) -> MvChain {
    let xs = axis_shape(rng, max_axes, max_axis);
    let ys = axis_shape(rng, max_axes, max_axis);
    let zs = axis_shape(rng, max_axes, max_axis);
    let source = simplex(rng, xs.iter().product());
    let m_xy = transition_tensor(rng, &xs, &ys);
    let m_yz = transition_tensor(rng, &ys, &zs);
    MvChain::new(source, m_xy, m_yz).expect("shapes chain")
}

pub fn triple<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize, l: usize) -> TripleTable {
    TripleTable::from_shape(simplex(rng, m * n * l), m, n, l).expect("simplex tensor is valid")
}

/// `P(i, j, k) = P(k)·P(i|k)·P(j|k)`: X and Y independent given Z.
pub fn conditionally_independent_triple<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize, l: usize) -> TripleTable {
    let pz = simplex(rng, l);
    let px: Vec<Vec<f64>> = (0..l).map(|_| simplex(rng, m)).collect();
    let py: Vec<Vec<f64>> = (0..l).map(|_| simplex(rng, n)).collect();
    let mut p = vec![0.0; m * n * l];
    for i in 0..m {
        for j in 0..n {
            for k in 0..l {
                p[(i * n + j) * l + k] = pz[k] * px[k][i] * py[k][j];
            }
        }
    }
    TripleTable::from_shape(p, m, n, l).expect("product construction is valid")
}
