//! Caustics by refraction at circles and lines, Cartesian ovals, and the
//! exact polynomial elimination behind them.
//!
//! Geometry is generic over [`scalar::Scalar`]: exact rationals ([`Q`]) for
//! algebraic identities and `f32`/`f64` for sampling. The aliases below fix
//! the two common towers.

pub mod caustic;
pub mod geom;
pub mod oval;
pub mod poly;
pub mod scalar;

pub use scalar::Q;

pub type Point2f = geom::Point2<f64>;
pub type Point2q = geom::Point2<Q>;
pub type Vec2f = geom::Vec2<f64>;
pub type Vec2q = geom::Vec2<Q>;
pub type Line2f = geom::Line2<f64>;
pub type Line2q = geom::Line2<Q>;
pub type Circle2f = geom::Circle2<f64>;
pub type Circle2q = geom::Circle2<Q>;
pub type Scenef = geom::Scene<f64>;
pub type Sceneq = geom::Scene<Q>;
pub type CartesianOvalf = oval::CartesianOval<f64>;
pub type CartesianOvalq = oval::CartesianOval<Q>;
