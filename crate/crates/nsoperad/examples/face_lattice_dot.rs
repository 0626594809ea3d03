//! DOT output: the signed face lattice of an associahedron and a single
//! tree. Pipe into graphviz, e.g.
//!
//! ```bash
//! cargo run --example face_lattice_dot > k4.dot && dot -Tsvg k4.dot -o k4.svg
//! ```

use nsoperad::report::face_lattice_dot;

fn main() {
    print!("{}", face_lattice_dot(4));
}
