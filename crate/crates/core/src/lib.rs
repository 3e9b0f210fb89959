//! # svplan
//!
//! Motion planning toolkit and closed-loop simulator for 3-DOF surface
//! vessels. The pipeline has two stages:
//!
//! - a global stage that builds a maximum-clearance roadmap from a Voronoi
//!   diagram of the obstacle field, selects a path with a multiscale
//!   jerk/acceleration/length criterion, smooths it into a G1 piecewise
//!   Bezier curve and time-parameterizes it into a reference trajectory;
//! - an online stage that replans receding-horizon motions with an economic
//!   MPC (propeller power in the stage cost, collision constraints hard)
//!   and tracks them with a low-level MPC controller in a deterministic
//!   closed-loop simulation.
//!
//! Core geometry and dynamics are generic over the scalar type; the solver
//! and simulation layers use the `f64` aliases exported at the crate root.

pub mod bezier;
pub mod empc;
pub mod env_graph;
pub mod geom;
pub mod harness;
pub mod horizon;
pub mod real;
pub mod tracker;
pub mod trajectory;
pub mod vessel;

/// Scalar type used by the solver and simulation layers.
pub type Scalar = f64;

pub type Vec2 = geom::Vec2<Scalar>;
pub type Rect = geom::Rect<Scalar>;
pub type VesselParams = vessel::VesselParams<Scalar>;
pub type State6 = vessel::State6<Scalar>;
pub type AugState = vessel::AugState<Scalar>;
pub type ControlRate = vessel::ControlRate<Scalar>;
pub type Obstacle = env_graph::Obstacle<Scalar>;
pub type Environment = env_graph::Environment<Scalar>;
pub type RoadmapGraph = env_graph::RoadmapGraph<Scalar>;
pub type PathCandidate = env_graph::PathCandidate<Scalar>;





