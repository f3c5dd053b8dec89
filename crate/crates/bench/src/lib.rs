//! Shared fixtures for the benchmark suite: corpus objects built at a given
//! weight window.

use std::sync::Arc;

use fachom_core::algebra::WgAlgebra;
use fachom_core::lie::WgLieAlgebra;
use fachom_core::presets::{algebra_preset, lie_preset};

pub fn polynomial(max_weight: i64) -> Arc<WgAlgebra> {
    algebra_preset("polynomial", max_weight).unwrap()
}

pub fn tensor2(max_weight: i64) -> Arc<WgAlgebra> {
    algebra_preset("tensor2", max_weight).unwrap()
}

pub fn heisenberg(max_weight: i64) -> WgLieAlgebra {
    lie_preset("heisenberg", max_weight).unwrap()
}
