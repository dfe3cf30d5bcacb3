//! Inputs shared by the `kernels` benchmarks.

use hopfkit_core::commutative::{mu_n_group_algebra, GroupTable};
use hopfkit_core::fixtures::{two_dim, witt, TwistedExample};
use hopfkit_core::isocat::{FormSpec, NormalAbelianEmbedding, PipelineJson};
use hopfkit_core::{Field, HopfPresentation, Matrix};

pub fn falling_factorial(p: u32) -> TwistedExample {
    two_dim(p).expect("fixture")
}

pub fn witt_twist() -> TwistedExample {
    witt(3, 1).expect("fixture").full
}

pub fn k_mu2() -> HopfPresentation {
    mu_n_group_algebra(2, Field::Fp(2))
}

pub fn d4_pipeline() -> PipelineJson {
    let e = NormalAbelianEmbedding::new(Field::Fp(3), GroupTable::dihedral(4), &[0, 2, 4, 6]).expect("normal");
    let mut input = PipelineJson::new(&e, FormSpec::Named("standard".into()));
    input.shift = Some(vec![0, 4]);
    input
}

/// A dense `n × n` matrix over `F_p` with pseudo-random entries.
pub fn dense_matrix(p: u32, n: usize) -> Matrix {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    (state % p as u64) as i64
                })
                .collect()
        })
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_i64(Field::Fp(p), &refs)
}
