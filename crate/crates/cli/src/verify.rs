//! The `paper-constants` suite: exact values and closed forms that every
//! build must reproduce.

use std::f64::consts::PI;

use rand::Rng;
use xorgap::gpt::{two_isomorphic_base_norm, Gpt};
use xorgap::montecarlo::{normals, stream};
use xorgap::spaces::{SpaceDescriptor, SpaceKind};
use xorgap::witnesses::{chsh19_witness, identity_ratio, projection_constant_l1, projection_constant_l1_enumerated};
use xorgap::Result;

use crate::report::{Check, VerifyReport};

const TOL: f64 = 1e-7;

fn equal(name: String, value: f64, target: f64) -> Check {
    Check {
        pass: (value - target).abs() <= TOL * target.abs().max(1.0),
        name,
        value,
        target,
    }
}

fn at_least(name: String, value: f64, target: f64) -> Check {
    Check {
        pass: value >= target - TOL * target.abs().max(1.0),
        name,
        value,
        target,
    }
}

fn at_most(name: String, value: f64, target: f64) -> Check {
    Check {
        pass: value <= target + TOL * target.abs().max(1.0),
        name,
        value,
        target,
    }
}

fn random_polygon(seed: u64, idx: u64) -> SpaceDescriptor {
    let mut rng = stream(seed, idx);
    loop {
        let half = rng.random_range(3..=8);
        let pts: Vec<(f64, f64)> = (0..half)
            .map(|_| (rng.random::<f64>() * PI, 0.5 + rng.random::<f64>()))
            .collect();
        if let Ok(s) = SpaceDescriptor::symmetric_polygon(&pts) {
            return s;
        }
    }
}

pub fn paper_constants(seed: u64) -> Result<VerifyReport> {
    let mut checks = Vec::new();

    for n in 2..=8 {
        let r = identity_ratio(SpaceKind::L1, SpaceKind::L2, n)?;
        checks.push(equal(format!("identity ratio l1({n}) x l2({n})"), r, (n as f64).sqrt()));
    }
    for n in 2..=6 {
        let r = identity_ratio(SpaceKind::L1, SpaceKind::Linf, n)?;
        checks.push(equal(format!("identity ratio l1({n}) x linf({n})"), r, n as f64));
    }

    for (n, target) in [(2, 2.0), (3, 2.0), (4, 8.0 / 3.0)] {
        let closed = projection_constant_l1(n)?;
        let enumerated = projection_constant_l1_enumerated(n)?;
        checks.push(equal(format!("projection constant l1({n})"), closed.value(), target));
        checks.push(equal(format!("projection constant l1({n}) by enumeration"), enumerated.value(), target));
    }
    let p30 = projection_constant_l1(30)?.value() / (PI * 30.0 / 2.0).sqrt();
    checks.push(Check {
        name: "projection constant l1(30) / sqrt(30 pi / 2)".into(),
        pass: (p30 - 1.0).abs() <= 0.05,
        value: p30,
        target: 1.0,
    });

    let h = SpaceDescriptor::hexagon();
    let c = chsh19_witness(&h, &h)?;
    checks.push(equal("chsh19 hexagon pairing".into(), c.pairing, 19.0));
    checks.push(equal("chsh19 hexagon injective norm".into(), c.eps_z, 9.0));
    checks.push(at_least("chsh19 hexagon certified ratio".into(), c.bound, 19.0 / 18.0));

    let mut rng = stream(seed, 1);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let d = 1 + i % 6;
        let x = normals(&mut rng, d);
        let l1: f64 = x.iter().map(|v| v.abs()).sum();
        let b = Gpt::classical(d)?.base_norm(&x)?;
        worst = worst.max((b - l1).abs() / l1.max(1.0));
    }
    checks.push(at_most("classical base norm = l1 (1000 vectors)".into(), worst, 0.0));

    let spaces: Vec<SpaceDescriptor> = vec![
        SpaceDescriptor::hexagon(),
        SpaceDescriptor::l1(2)?,
        SpaceDescriptor::linf(3)?,
        SpaceDescriptor::l1(3)?,
        random_polygon(seed, 2),
    ];
    let gpts = spaces
        .iter()
        .map(Gpt::centrally_symmetric)
        .collect::<Result<Vec<_>>>()?;
    let mut rng = stream(seed, 3);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let (x, g) = (&spaces[i % spaces.len()], &gpts[i % spaces.len()]);
        let v = normals(&mut rng, x.dim() + 1);
        let expect = x.norm(&v[..x.dim()])?.max(v[x.dim()].abs());
        let got = g.base_norm(&v)?;
        worst = worst.max((got - expect).abs() / expect.max(1.0));
    }
    checks.push(at_most(
        "centrally symmetric base norm = max(norm, |a|) (1000 samples)".into(),
        worst,
        0.0,
    ));

    let mut widest = 0.0f64;
    for i in 0..20 {
        let t = two_isomorphic_base_norm(&random_polygon(seed, 100 + i), None)?;
        widest = widest.max(t.inner).max(t.outer / 2.0);
    }
    checks.push(at_most(
        "2-isomorphic base norm: B in B_X in 2B (20 polygons)".into(),
        widest,
        1.0,
    ));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        suite: "paper-constants".into(),
        checks,
        pass,
    })
}
