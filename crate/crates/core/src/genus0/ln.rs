//! The sequence `l_n`: least `l` with `δ^n` in the closure of `W_l`.
//!
//! A partial quotient `a_k` sits at `n = deg p_k` and forces `l_n = d − deg a_k`.
//! Between such positions the sequence climbs by one, reaching exactly `g`
//! just before the next position.

use super::Genus0Error;

fn check_shape(g: usize, d: usize) -> Result<(), Genus0Error> {
    if d != g + 1 {
        return Err(Genus0Error::Constraint(format!("need d = g + 1, got g = {g}, d = {d}")));
    }
    Ok(())
}

/// `l_0, …, l_m` with `m = deg p_{K−1}` for `K` given degrees.
pub fn ln_from_degrees(degrees: &[usize], g: usize, d: usize) -> Result<Vec<usize>, Genus0Error> {
    check_shape(g, d)?;
    match degrees.first() {
        None => return Ok(Vec::new()),
        Some(&a0) if a0 != d => {
            return Err(Genus0Error::Constraint(format!("deg a_0 must be d = {d}, got {a0}")))
        }
        _ => {}
    }
    let mut out = vec![0];
    for (k, &a) in degrees.iter().enumerate().skip(1) {
        if a == 0 || a > d {
            return Err(Genus0Error::Constraint(format!(
                "deg a_{k} = {a} lies outside 1..={d}"
            )));
        }
        // climb from the previous position to g, then land on d − a
        let prev = degrees[k - 1];
        let start = *out.last().expect("nonempty");
        out.extend((1..prev).map(|i| start + i));
        debug_assert_eq!(*out.last().expect("nonempty"), if prev == 1 { start } else { g });
        out.push(d - a);
    }
    Ok(out)
}

/// Inverse of [`ln_from_degrees`].
pub fn degrees_from_ln(ln: &[usize], g: usize, d: usize) -> Result<Vec<usize>, Genus0Error> {
    check_shape(g, d)?;
    match ln.first() {
        None => return Ok(Vec::new()),
        Some(&l0) if l0 != 0 => {
            return Err(Genus0Error::Constraint(format!("l_0 must be 0, got {l0}")))
        }
        _ => {}
    }
    let mut out = vec![d];
    for n in 1..ln.len() {
        let (prev, cur) = (ln[n - 1], ln[n]);
        if cur > g {
            return Err(Genus0Error::Constraint(format!("l_{n} = {cur} exceeds g = {g}")));
        }
        if prev == g {
            out.push(d - cur);
        } else if cur != prev + 1 {
            return Err(Genus0Error::Constraint(format!(
                "l_{n} = {cur} must follow l_{} = {prev} by one",
                n - 1
            )));
        }
    }
    // a window must end on a partial-quotient position, which follows a g
    let last = ln.len() - 1;
    if last > 0 && ln[last - 1] != g {
        return Err(Genus0Error::Constraint(
            "sequence must end at a partial-quotient position".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn worked_sequence() {
        // deg a = 5, 3, 1, 1, 2, 4, 1 with g = 4
        let ln = ln_from_degrees(&[5, 3, 1, 1, 2, 4, 1], 4, 5).unwrap();
        assert_eq!(ln, vec![0, 1, 2, 3, 4, 2, 3, 4, 4, 4, 3, 4, 1, 2, 3, 4, 4]);
    }

    #[test]
    fn unit_degrees_stay_at_g() {
        let ln = ln_from_degrees(&[3, 1, 1, 1, 1], 2, 3).unwrap();
        assert_eq!(ln, vec![0, 1, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn main_example_alternates() {
        let ln = ln_from_degrees(&[5, 1, 2, 1, 2, 1], 4, 5).unwrap();
        assert_eq!(ln, vec![0, 1, 2, 3, 4, 4, 3, 4, 4, 3, 4, 4]);
    }

    #[test]
    fn rejects_inconsistent_input() {
        assert!(ln_from_degrees(&[5, 6], 4, 5).is_err());
        assert!(ln_from_degrees(&[4, 1], 4, 5).is_err());
        assert!(ln_from_degrees(&[5, 0], 4, 5).is_err());
        assert!(ln_from_degrees(&[5, 1], 3, 5).is_err());
        assert!(degrees_from_ln(&[0, 2], 4, 5).is_err());
        assert!(degrees_from_ln(&[0, 1, 2, 3, 4, 5], 4, 5).is_err());
        assert!(degrees_from_ln(&[1], 4, 5).is_err());
        // stops mid-climb
        assert!(degrees_from_ln(&[0, 1, 2], 4, 5).is_err());
    }

    fn degree_sequence() -> impl Strategy<Value = (Vec<usize>, usize)> {
        (1usize..7).prop_flat_map(|g| {
            let d = g + 1;
            prop::collection::vec(1..=d, 0..25).prop_map(move |mut tail| {
                tail.insert(0, d);
                (tail, g)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn round_trip((degrees, g) in degree_sequence()) {
            let ln = ln_from_degrees(&degrees, g, g + 1).unwrap();
            prop_assert!(ln.iter().all(|&l| l <= g));
            prop_assert_eq!(ln.len(), degrees[..degrees.len() - 1].iter().sum::<usize>() + 1);
            prop_assert_eq!(degrees_from_ln(&ln, g, g + 1).unwrap(), degrees);
        }
    }
}
