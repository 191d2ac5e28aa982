//! Pseudo-Riemannian pipeline over the exact tower.

pub mod connection;
pub mod fields;
pub mod forms;
pub mod killing;
pub mod metric;

pub use connection::{
    christoffel, covariant_derivative, curvature_from_table, ricci_scalar, riemann_transform,
    sectional, sectional_parts, trace_form, ChristoffelTable, CurvatureTensors, SectionalParts,
};
pub use fields::{bracket, combine, VectorFieldSym};
pub use forms::{ChartMap, Form};
pub use killing::{
    express_in, field_rank, killing_solve, span_equal, structure_constants, KillingSolution,
    StructureConstants,
};
pub use metric::{gram_matrix, is_killing, lie_derivative_metric, MetricSpec};
