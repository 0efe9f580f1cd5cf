//! Small named complexes used as golden fixtures.

use crate::complex::SimplicialComplex;

/// Minimal 5-vertex triangulation of the Möbius strip: triangles
/// `{i, i+1, i+3} mod 5`. Its 1-skeleton is `K_5`; `h = 5/4`, `λ = 0`.
pub fn mobius() -> SimplicialComplex {
    let tris = (0..5).map(|i| vec![i, (i + 1) % 5, (i + 3) % 5]);
    SimplicialComplex::from_top_cells(5, tris).expect("valid fixture")
}

/// Two triangles glued at vertex 2 (the "bowtie" ▶◀).
pub fn bowtie() -> SimplicialComplex {
    SimplicialComplex::from_top_cells(5, vec![vec![0, 1, 2], vec![2, 3, 4]]).expect("valid fixture")
}

/// Cycle graph `C_n`.
pub fn cycle_graph(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_top_cells(n, (0..n).map(|i| vec![i, (i + 1) % n])).expect("n >= 3")
}

/// Path graph `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_top_cells(n, (0..n - 1).map(|i| vec![i, i + 1])).expect("n >= 2")
}

/// A non-minimal triangulated `(d-1)`-sphere with one `d`-simplex attached
/// along a `(d-1)`-cell, for `d` in {2, 3}.
///
/// `d = 2`: the 4-cycle plus triangle `{0,1,4}` (n = 5).
/// `d = 3`: the octahedron boundary plus tetrahedron `{0,1,2,6}` (n = 7).
pub fn sphere_with_pendant(d: usize) -> SimplicialComplex {
    match d {
        2 => {
            let mut cells: Vec<Vec<usize>> = (0..4).map(|i| vec![i, (i + 1) % 4]).collect();
            cells.push(vec![0, 1, 4]);
            SimplicialComplex::with_dimension(5, 2, cells).expect("valid fixture")
        }
        3 => {
            // octahedron: poles 4, 5 over the square 0-1-2-3... relabeled so
            // that {0,1,2} is a face: equator 0,2,3,5 and poles 1,4
            let equator = [0, 2, 3, 5];
            let mut cells = Vec::new();
            for pole in [1, 4] {
                for i in 0..4 {
                    cells.push(vec![pole, equator[i], equator[(i + 1) % 4]]);
                }
            }
            cells.push(vec![0, 1, 2, 6]);
            SimplicialComplex::with_dimension(7, 3, cells).expect("valid fixture")
        }
        _ => panic!("sphere_with_pendant supports d = 2 or 3"),
    }
}

/// `count` vertex-disjoint triangles.
pub fn disjoint_triangles(count: usize) -> SimplicialComplex {
    SimplicialComplex::from_top_cells(
        3 * count,
        (0..count).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]),
    )
    .expect("valid fixture")
}

/// `count` triangles sharing the single vertex 0 and nothing else.
pub fn triangle_fan(count: usize) -> SimplicialComplex {
    SimplicialComplex::from_top_cells(
        1 + 2 * count,
        (0..count).map(|i| vec![0, 2 * i + 1, 2 * i + 2]),
    )
    .expect("valid fixture")
}

/// Three triangles glued in a ring at single vertices: `{0,1,2}, {2,3,4}, {4,5,0}`.
pub fn triangle_ring() -> SimplicialComplex {
    SimplicialComplex::from_top_cells(6, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]])
        .expect("valid fixture")
}

/// Every named fixture plus complete complexes and seeded random complexes,
/// for identity sweeps.
pub fn corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> = vec![
        ("mobius".into(), mobius()),
        ("bowtie".into(), bowtie()),
        ("cycle-5".into(), cycle_graph(5)),
        ("path-4".into(), path_graph(4)),
        ("sphere-pendant-2".into(), sphere_with_pendant(2)),
        ("sphere-pendant-3".into(), sphere_with_pendant(3)),
        ("disjoint-triangles".into(), disjoint_triangles(2)),
        ("triangle-fan".into(), triangle_fan(3)),
        ("triangle-ring".into(), triangle_ring()),
    ];
    for (n, d) in [(5, 1), (4, 2), (6, 2), (7, 2), (6, 3)] {
        out.push((format!("complete-{n}-{d}"), SimplicialComplex::complete(n, d).expect("d < n")));
    }
    for (d, n, p, seed) in [(1, 8, 0.4, 1), (2, 7, 0.5, 2), (2, 9, 0.3, 3), (3, 7, 0.4, 4)] {
        let params = crate::random::LmParams::new(d, n, p, seed).expect("valid parameters");
        out.push((
            format!("lm-{d}-{n}-{p}-{seed}"),
            crate::random::linial_meshulam(&params).expect("valid parameters"),
        ));
    }
    out
}
