//! Edge colorings of common lattice patches. Each color class is a matching,
//! so all hopping terms in it act on disjoint pairs of sites.

use noclid::operators::{Boundary, Lattice};
use noclid::partition::{edge_coloring, is_proper_edge_coloring};

pub fn run_example() -> noclid::Result<Vec<(&'static str, usize)>> {
    let patches = [
        ("chain", Lattice::chain(10, Boundary::Open)?),
        ("square", Lattice::square(5, 5, Boundary::Open)?),
        ("hexagonal", Lattice::hexagonal(6, 6)?),
        ("triangular", Lattice::triangular(5, 5, Boundary::Open)?),
        ("cubic", Lattice::cubic(3, 3, 3, Boundary::Open)?),
        ("tetrahedral", Lattice::tetrahedral(2)?),
        ("complete(6)", Lattice::complete(6)?),
    ];
    let mut out = Vec::new();
    println!("{:<12} {:>5} {:>5} {:>4} {:>6}", "lattice", "sites", "edges", "deg", "colors");
    for (name, lat) in patches {
        let classes = edge_coloring(&lat);
        assert!(is_proper_edge_coloring(&lat, &classes));
        println!(
            "{name:<12} {:>5} {:>5} {:>4} {:>6}",
            lat.sites,
            lat.edges.len(),
            lat.max_degree(),
            classes.len()
        );
        out.push((name, classes.len()));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> noclid::Result<()> {
    run_example().map(|_| ())
}
