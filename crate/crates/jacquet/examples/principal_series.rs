//! K-type model of a principal series of SL(2,R) and its Jacquet module.

use jacquet::jacquet::{jacquet, ps_window, JacquetOptions};
use jacquet::module::{principal_series, principal_series_reducible};
use jacquet::roots::Theta;
use jacquet::{q, qr};

fn main() -> jacquet::Result<()> {
    for (nu, parity) in [(qr(1, 2), 0), (q(1), 0), (q(2), 1)] {
        let ps = principal_series(&nu, parity, ps_window(4, &nu))?;
        let j = jacquet(&ps, &Theta::all(1), &Theta::empty(), &JacquetOptions { height: 4, ..Default::default() })?;
        let eig: Vec<String> = j.weights.iter().map(|w| format!("{}:{}", w.weight[0], w.dim)).collect();
        println!("ν={nu} ε={parity} reducible={} eigenvalues {}", principal_series_reducible(&nu, parity), eig.join(" "));
    }
    Ok(())
}
