use log::warn;

use super::krawczyk::{divide_at, krawczyk_image, krawczyk_verify, BisectionBudget, VerifyStatus};
use super::Certificate;
use crate::interval::{Interval, IntervalBox};
use crate::poly::PolySystem;

/// Off-center cut used when neither half of a midpoint split verifies.
pub const OFF_CENTER_SHIFT: f64 = 1.0 / 16.0;

fn overlap(a: &IntervalBox, b: &IntervalBox) -> Option<IntervalBox> {
    a.intersect(b).expect("boxes share the system dimension")
}

/// Removes overlaps between certified boxes.
///
/// For each overlapping pair with intersection `Z`: if `Z` itself verifies,
/// both boxes hold the same zero and the later one is dropped. If `Z` is
/// proven root-free, one box is trimmed so it no longer meets `Z`. Otherwise
/// the later box is dropped with a warning, so overlapping boxes are never
/// emitted.
pub fn disjoint_process(certs: Vec<Certificate>, sys: &PolySystem, budget: &BisectionBudget) -> Vec<Certificate> {
    let mut kept: Vec<Certificate> = Vec::with_capacity(certs.len());
    'next: for mut cert in certs {
        let mut i = 0;
        while i < kept.len() {
            let Some(z) = overlap(&cert.region, &kept[i].region) else {
                i += 1;
                continue;
            };
            match krawczyk_verify(sys, &z, budget).status() {
                VerifyStatus::Verified => continue 'next,
                VerifyStatus::NoRoot => {
                    if let Some(t) = exclude(sys, &cert, &z, budget) {
                        cert = t;
                    } else if let Some(t) = exclude(sys, &kept[i], &z, budget) {
                        kept[i] = t;
                    } else {
                        warn!("could not separate overlapping boxes; dropping {:?}", cert.region);
                        continue 'next;
                    }
                }
                VerifyStatus::Undecided => {
                    warn!(
                        "overlap of two certified boxes is undecided; dropping {:?}",
                        cert.region
                    );
                    continue 'next;
                }
            }
            i += 1;
        }
        kept.push(cert);
    }
    kept
}

/// A certificate for the same zero whose box misses the root-free box `z`.
///
/// The zero lies in `K(X) ∩ X`. Iterating that intersection shrinks it
/// towards the zero until some coordinate separates it from `z`; `X` is cut
/// along that coordinate just short of `z` and re-verified.
fn exclude(sys: &PolySystem, cert: &Certificate, z: &IntervalBox, budget: &BisectionBudget) -> Option<Certificate> {
    let x = &cert.region;
    let mut hull = cert.image.intersect(x).ok()??;
    for _ in 0..16 {
        if let Some(j) = (0..x.dim()).find(|&j| hull.get(j).intersect(&z.get(j)).is_none()) {
            let (xj, hj, zj) = (x.get(j), hull.get(j), z.get(j));
            let piece = if hj.hi() < zj.lo() {
                Interval::new(xj.lo(), zj.lo().next_down()).ok()?
            } else {
                Interval::new(zj.hi().next_up(), xj.hi()).ok()?
            };
            let candidate = x.with_component(j, piece);
            let v = krawczyk_verify(sys, &candidate, budget);
            if v.verified.len() != 1 {
                return None;
            }
            let found = v.verified.into_iter().next().expect("one certificate");
            // An inflated retest may leave the cut box; it must stay clear of `z`.
            if !found.region.is_subset(&candidate).ok()? {
                return None;
            }
            return Some(Certificate {
                region: found.region,
                image: found.image,
                bisections: cert.bisections + v.bisections,
                krawczyk_steps: cert.krawczyk_steps + v.krawczyk_steps,
                ..cert.clone()
            });
        }
        let k = krawczyk_image(sys, &hull).ok()?;
        let next = k.intersect(&hull).ok()??;
        if next == hull {
            return None;
        }
        hull = next;
    }
    None
}

/// Shrinks every certificate until each coordinate radius is at most `tau`.
///
/// `K(X)` is itself tried as the next box first: near a simple zero it is
/// far smaller than `X`. Once that stops working the box is bisected,
/// keeping the half that verifies. If neither half of a midpoint split
/// verifies (the zero sits on the cut), the split is retried off center;
/// if that fails too, the last certified box is kept and flagged.
pub fn narrowing(certs: Vec<Certificate>, sys: &PolySystem, tau: f64, budget: &BisectionBudget) -> Vec<Certificate> {
    // Halves are expected to verify or be excluded almost at once; a deep
    // search only happens at the rounding floor, where it cannot succeed.
    let budget = BisectionBudget {
        max_depth: budget.max_depth.min(4),
        max_boxes: budget.max_boxes.min(32),
        ..budget.clone()
    };
    certs.into_iter().map(|c| narrow_one(c, sys, tau, &budget)).collect()
}

fn contract(cert: &Certificate, sys: &PolySystem) -> Option<Certificate> {
    let next = krawczyk_image(sys, &cert.image).ok()?;
    let shrinks = cert.image.max_rad() < cert.region.max_rad();
    (shrinks && next.is_interior(&cert.image).ok()?).then(|| Certificate {
        region: cert.image.clone(),
        image: next,
        krawczyk_steps: cert.krawczyk_steps + 1,
        ..cert.clone()
    })
}

fn narrow_one(mut cert: Certificate, sys: &PolySystem, tau: f64, budget: &BisectionBudget) -> Certificate {
    while cert.region.max_rad() > tau {
        if let Some(c) = contract(&cert, sys) {
            cert = c;
            continue;
        }
        let next = [0.5, 0.5 + OFF_CENTER_SHIFT]
            .into_iter()
            .find_map(|frac| narrow_step(&cert, sys, frac, budget));
        match next {
            Some(c) => cert = c,
            None => {
                warn!("could not narrow {:?} below {tau:e}", cert.region);
                cert.tolerance_met = false;
                return cert;
            }
        }
    }
    cert.tolerance_met = true;
    cert
}

fn narrow_step(cert: &Certificate, sys: &PolySystem, frac: f64, budget: &BisectionBudget) -> Option<Certificate> {
    let (a, b) = divide_at(&cert.region, frac).ok()?;
    let mut steps = 0;
    for half in [a, b] {
        let v = krawczyk_verify(sys, &half, budget);
        steps += v.krawczyk_steps;
        if v.verified.len() == 1 && v.verified[0].region.is_subset(&cert.region).ok()? {
            let found = v.verified.into_iter().next().expect("one certificate");
            return Some(Certificate {
                region: found.region,
                image: found.image,
                narrowing_bisections: cert.narrowing_bisections + 1 + v.bisections,
                krawczyk_steps: cert.krawczyk_steps + steps,
                ..cert.clone()
            });
        }
    }
    None
}

#[cfg(test)]
#[allow(clippy::approx_constant)] // rough guesses on purpose
mod tests {
    use super::*;
    use crate::poly::parse_system;

    fn sqrt2() -> PolySystem {
        parse_system("vars: x\nx^2 - 2").unwrap()
    }

    fn cert(sys: &PolySystem, lo: f64, hi: f64) -> Certificate {
        let region = IntervalBox::new(vec![Interval::new(lo, hi).unwrap()]).unwrap();
        let image = krawczyk_image(sys, &region).unwrap();
        assert!(image.is_interior(&region).unwrap());
        Certificate::new(region, image, None)
    }

    #[test]
    fn disjoint_boxes_unchanged() {
        let sys = sqrt2();
        let a = cert(&sys, -1.5, -1.3);
        let b = cert(&sys, 1.3, 1.5);
        let out = disjoint_process(vec![a.clone(), b.clone()], &sys, &BisectionBudget::default());
        assert_eq!(out, vec![a, b]);
    }

    #[test]
    fn identical_boxes_collapse() {
        let sys = sqrt2();
        let a = cert(&sys, 1.3, 1.5);
        let out = disjoint_process(vec![a.clone(), a.clone()], &sys, &BisectionBudget::default());
        assert_eq!(out, vec![a]);
    }

    #[test]
    fn shifted_duplicate_detected() {
        let sys = sqrt2();
        let a = cert(&sys, 1.40, 1.43);
        let b = cert(&sys, 1.41, 1.45);
        let out = disjoint_process(vec![a.clone(), b], &sys, &BisectionBudget::default());
        assert_eq!(out, vec![a]);
    }

    #[test]
    fn root_free_slab_is_cut_away() {
        let sys = sqrt2();
        let c = cert(&sys, 1.3, 1.5);
        let z = IntervalBox::new(vec![Interval::new(1.45, 1.6).unwrap()]).unwrap();
        let t = exclude(&sys, &c, &z, &BisectionBudget::default()).unwrap();
        assert!(t.region.get(0).hi() < 1.45);
        assert!(t.region.is_subset(&c.region).unwrap());
        assert!(t.region.contains_point(&[std::f64::consts::SQRT_2]));
        assert!(t.recheck(&sys));
    }

    #[test]
    fn narrowing_reaches_tolerance() {
        let sys = sqrt2();
        let out = narrowing(vec![cert(&sys, 1.4, 1.43)], &sys, 1e-6, &BisectionBudget::default());
        let c = &out[0];
        assert!(c.tolerance_met);
        assert!(c.region.max_rad() <= 1e-6);
        assert!(c.region.contains_point(&[std::f64::consts::SQRT_2]));
        assert!(c.image.is_interior(&c.region).unwrap());
    }

    #[test]
    fn narrowing_leaves_small_boxes_alone() {
        let sys = sqrt2();
        let c = cert(&sys, 1.4142, 1.4143);
        let out = narrowing(vec![c.clone()], &sys, 1e-3, &BisectionBudget::default());
        assert_eq!(out[0].region, c.region);
        assert_eq!(out[0].narrowing_bisections, 0);
    }

    #[test]
    fn narrowing_survives_root_on_cut() {
        // The root 1 is exactly the midpoint of [0.5, 1.5].
        let sys = parse_system("vars: x\nx - 1").unwrap();
        let out = narrowing(vec![cert(&sys, 0.5, 1.5)], &sys, 1e-3, &BisectionBudget::default());
        assert!(out[0].tolerance_met);
        assert!(out[0].region.contains_point(&[1.0]));
    }
}
