//! Planar maps, their periodic-point equations, parameter-family and
//! simplicity lemmas, and orbit linking.

mod family;
mod maps;
mod markus;
mod orbit;
mod quadratic;
mod simple;

pub use family::{family_no_roots, FamilyCertificate, FamilyFailure};
pub use maps::{
    fixed_point_system, iterate_map, lotka_volterra, poly2_enclosure, PeriodicSystem, PolyMap2, RationalMap2,
};
pub use markus::{
    at_parameter, my_condition, my_condition_on, my_period3_symbolic, my_period3_system, parameter_degree,
    restrict_face, MyConditionOn, ParamPoly2,
};
pub use orbit::{lower_periods_not_excluded, orbit_link, OrbitPartition};
pub use quadratic::{eval_mod, map_mod, reduce, verify_cycle, QuadraticRoot};
pub use simple::{jacobian_det, resultant_any, simplicity_check, Simplicity};
