//! Small named complexes used throughout the tests and the verify bundle.

use crate::complex::SimplicialComplex;
use crate::pitchspace::Scale;

fn build(ground: u32, facets: &[&[u32]]) -> SimplicialComplex {
    let facets = facets
        .iter()
        .map(|f| Scale::from_pitches(f.iter().copied()).expect("small indices"));
    SimplicialComplex::build_from_facets(ground, facets).expect("fixture facets lie in the ground set")
}

/// An edge and an isolated point: `{{0,1},{2}}` closed downward.
pub fn edge_and_point() -> SimplicialComplex {
    build(3, &[&[0, 1], &[2]])
}

/// The unfilled triangle.
pub fn hollow_triangle() -> SimplicialComplex {
    build(3, &[&[0, 1], &[1, 2], &[0, 2]])
}

/// The filled triangle.
pub fn filled_triangle() -> SimplicialComplex {
    build(3, &[&[0, 1, 2]])
}

/// All six edges of a tetrahedron.
pub fn tetrahedron_skeleton() -> SimplicialComplex {
    build(4, &[&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]])
}

/// A filled triangle `{1,2,3}` glued along `{1,2}` to a hollow triangle
/// through vertex 0. Only the filled triangle can be collapsed; `{1,2}` is
/// the inner edge and `{1,3}`, `{2,3}` are the outer ones.
pub fn glued_triangles() -> SimplicialComplex {
    build(4, &[&[0, 1], &[0, 2], &[1, 2, 3]])
}

/// Every named fixture with a label.
pub fn all() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("edge_and_point", edge_and_point()),
        ("hollow_triangle", hollow_triangle()),
        ("filled_triangle", filled_triangle()),
        ("tetrahedron_skeleton", tetrahedron_skeleton()),
        ("glued_triangles", glued_triangles()),
    ]
}
