//! Border geometry, densities, DNA strings and configuration counts.

pub mod border;
pub mod count;
pub mod density;
pub mod dna;

pub use border::{hex_number, solve_border, BorderSolution, ANGLE_TOL};
pub use count::{count_configurations, dodecagon_count, CountInput};
pub use density::{
    chp_density, chp_density_full_vertex, circle_density, density_from_diameter, density_limit,
    hexagon_density,
};
pub use dna::{
    canonicalize_dna, enumerate_dnas, enumerate_dnas_capped, enumerate_for, min_dna, orbit,
    reflect_dna, reflection_map, rotate_dna, Dna, DEFAULT_CAP,
};
