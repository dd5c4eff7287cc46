//! Gröbner bases and the ideal operations built on them.

pub mod engine;
mod ideal;

pub use engine::{GbEngine, GbStats, MTerm, ModuleOrder};
pub use ideal::{
    buchberger, buchberger_weighted, colon, colon_principal, contains_homogeneous, elimination_ideal, ideal_compose,
    ideal_equal, ideal_power, intersection, kernel_of_map, krull_dimension, normal_form, saturate, GroebnerBasis, Ideal,
    IdealOp, DEFAULT_MAX_PAIRS,
};

