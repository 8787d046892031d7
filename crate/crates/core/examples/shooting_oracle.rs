//! Cross-check of the time-map solver against direct shooting.
//!
//! Run with `cargo run --release --example shooting_oracle`.

use biflogis::local_logistic::{point_from_gamma, LocalParams};
use biflogis::oracle::{norms_from_profile, solve_bvp, ShootConfig};

fn main() -> biflogis::Result<()> {
    let cfg = ShootConfig::default();
    for p in [2.0, 3.0, 5.0] {
        let params = LocalParams::new(p)?;
        for gamma in [15.0, 50.0] {
            let tm = point_from_gamma(gamma, &params)?;
            let sh = solve_bvp(gamma, p, &cfg)?;
            let q4_tm = tm.q_norm(4.0, &params)?;
            let q4_sh = norms_from_profile(&sh.profile, 4.0)?;
            println!(
                "p = {p}, γ = {gamma}: k {:.12} vs {:.12}, d {:.12} vs {:.12}, ‖w‖_4 {:.12} vs {:.12}, drift {:.1e}",
                tm.k, sh.point.k, tm.d, sh.point.d, q4_tm, q4_sh, sh.energy_drift
            );
        }
    }
    Ok(())
}
