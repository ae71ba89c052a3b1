//! Fermion and boson encodings: Jordan-Wigner images of ladder products and
//! the Gray-code embedding of truncated oscillator operators.

use noclid::encodings::{encode_boson_block, gray_map, jordan_wigner};
use noclid::linalg::max_abs;
use noclid::operators::{boson_matrices, FermionOperator, LadderOp};

/// Largest deviation seen in `q_i q_j + p_i p_j = b_i^dagger b_j + b_j^dagger b_i` over the checked `d`.
pub fn run_example() -> noclid::Result<f64> {
    let mut hop = FermionOperator::new(3);
    hop.add_term(1.0, vec![LadderOp::create(0), LadderOp::annihilate(2)])?;
    hop.add_term(1.0, vec![LadderOp::create(2), LadderOp::annihilate(0)])?;
    println!("a0^ a2 + a2^ a0 ->\n{}", jordan_wigner(&hop)?.to_text());

    let map = gray_map(4)?;
    let codes: Vec<String> = (0..4).map(|l| map.code_string(l)).collect();
    println!("d=4 Gray codes on {} qubits: {codes:?}", map.k_mode);
    let mats = boson_matrices(4)?;
    println!("q ->\n{}", encode_boson_block(&mats.q, &map)?.to_text());
    println!("n ->\n{}", encode_boson_block(&mats.n, &map)?.to_text());

    let mut worst: f64 = 0.0;
    for d in [2, 3, 4, 8] {
        let m = boson_matrices(d)?;
        let qq = m.q.kronecker(&m.q) + m.p.kronecker(&m.p);
        let hop = m.bdag.kronecker(&m.b) + m.b.kronecker(&m.bdag);
        let err = max_abs(&(qq - hop));
        println!("d={d}: |qq + pp - (b^dagger b + h.c.)| = {err:.1e}");
        worst = worst.max(err);
    }
    Ok(worst)
}

#[allow(dead_code)]
fn main() -> noclid::Result<()> {
    run_example().map(|_| ())
}
