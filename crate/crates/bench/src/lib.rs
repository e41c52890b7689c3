//! Fixtures shared by the criterion benches.

use lieder::exactlin::rat;
use lieder::lie::catalog::heisenberg;
use lieder::nonabelian::LieExtension;
use lieder::{LieAlgebra, Matrix};

fn unit_cols(total: usize, idx: &[usize]) -> Matrix {
    Matrix::from_fn(
        total,
        idx.len(),
        |r, c| if r == idx[c] { rat(1) } else { rat(0) },
    )
}

/// `L_n`: filiform algebra with `[e1, e_i] = e_{i+1}`.
pub fn filiform(n: usize) -> LieAlgebra {
    let brackets: Vec<(usize, usize, Vec<(usize, i64)>)> =
        (1..n - 1).map(|i| (0, i, vec![(i + 1, 1)])).collect();
    let table: Vec<(usize, usize, &[(usize, i64)])> = brackets
        .iter()
        .map(|(i, j, v)| (*i, *j, v.as_slice()))
        .collect();
    LieAlgebra::from_table(&format!("L{n}"), n, &table)
}

/// `H5` as an extension of `A2` by `H3 = <e3, e4, e5>`.
pub fn h5_by_h3() -> LieExtension {
    let total = LieAlgebra::from_table("H5", 5, &[(0, 1, &[(4, 1)]), (2, 3, &[(4, 1)])]);
    LieExtension {
        inj: unit_cols(5, &[2, 3, 4]),
        proj: unit_cols(5, &[0, 1]).transpose(),
        total,
        g: LieAlgebra::abelian(2),
        h: heisenberg(),
    }
}
