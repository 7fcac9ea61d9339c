//! Exponential, logarithm branches and screw decomposition on SE(2) and SE(3).

use std::f64::consts::FRAC_PI_2;

use cage::lie::{Pose2, Twist2, Twist3};
use nalgebra::{Vector2, Vector3};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a quarter turn while drifting along +x
    let g = Twist2::new(Vector2::new(1.0, 0.0), FRAC_PI_2)?;
    let p = g.exp(1.0);
    println!("exp: translation ({:.6}, {:.6}), angle {:.6}", p.x(), p.y(), p.angle());

    let screw = g.screw();
    let c = screw.rotation_center();
    println!("rotation center ({:.6}, {:.6})", c.x, c.y);

    // the same end pose is reached by turning the long way round
    for k in -2..=2 {
        let h = p.log(k)?;
        let back = h.exp(1.0);
        println!(
            "branch {k:+}: theta {:+.6}, xi ({:+.6}, {:+.6}), roundtrip error {:.1e}",
            h.theta(),
            h.xi().x,
            h.xi().y,
            back.max_abs_diff(&p)
        );
    }

    // a pure translation has no screw on any branch but the principal one
    let shift = Pose2::from_xy_angle(2.0, 1.0, 0.0);
    match shift.log(1) {
        Ok(_) => println!("unexpected screw"),
        Err(e) => println!("translation, branch 1: {e}"),
    }

    let g3 = Twist3::new(Vector3::new(0.0, 0.0, 0.5), Vector3::new(0.0, 0.0, 1.2))?;
    let s3 = g3.screw();
    println!(
        "3D screw: axial drift {:.3}, end pose recovered with error {:.1e}",
        s3.kernel_translation.z,
        g3.exp(1.0).log(0)?.exp(1.0).max_abs_diff(&g3.exp(1.0))
    );
    Ok(())
}
