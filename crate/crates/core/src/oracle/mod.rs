//! Independent test oracles: brute-force LP feasibility, admissible
//! extreme-ray enumeration, and a census of tiny triangulations.

pub mod census;
pub mod lp;
pub mod rays;

pub use lp::{brute_force_feasible, cycling_instance, random_system, MAX_ORACLE_VARS};
pub use rays::{admissible_vertex_rays, check_topology, positive_non_link_ray, TopologyCheck};
