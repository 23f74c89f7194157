//! Edge-to-edge tilings of the sphere by congruent almost equilateral
//! pentagons (four edges of length a, one of length b).
//!
//! * [`angle`]: exact multiples of π.
//! * [`vertex`]: vertex types, AVC enumeration, counting lemmas.
//! * [`pentagon`]: existence identities, edge length solvers, simplicity.
//! * [`combmap`]: labeled half-edge maps and the combinatorial verifier.
//! * [`atlas`]: builders and parameter solvers for every family.
//! * [`realize`]: placement on the unit sphere and JSON/OBJ/SVG export.
//! * [`cli`]: the command-line frontend.

pub mod angle;
pub mod atlas;
pub mod cli;
pub mod combmap;
pub mod pentagon;
pub mod realize;
pub mod vertex;
