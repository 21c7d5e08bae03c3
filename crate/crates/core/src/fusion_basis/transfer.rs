use super::coloring::admissible_triple;
use crate::error::{Error, Result};
use crate::prime::Prime;

/// Even colors `0, 2, ..., p - 3`.
fn colors(p: Prime) -> Vec<u32> {
    (0..=p.get() - 3).step_by(2).collect()
}

fn fusion(p: Prime) -> impl Fn(u32, u32, u32) -> u128 {
    let pv = p.get();
    move |x, y, z| u128::from(admissible_triple(x, y, z, pv))
}

/// Number of loop colors compatible with each stick color.
fn handle_weights(p: Prime) -> Vec<u128> {
    let cs = colors(p);
    let n = fusion(p);
    cs.iter()
        .map(|&x| cs.iter().map(|&c| n(c, c, x)).sum())
        .collect()
}

/// Dimension count for the caterpillar by multiplying fusion matrices along the
/// spine, independent of the edge-by-edge search.
pub fn transfer_count_lollipop(g: usize, p: Prime) -> Result<u128> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("genus {g} < 2")));
    }
    let cs = colors(p);
    let n = fusion(p);
    let h = handle_weights(p);
    let k = cs.len();
    if g == 2 {
        return Ok(h.iter().map(|x| x * x).sum());
    }
    // u[y]: two end lollipops fused into spine color y
    let u: Vec<u128> = (0..k)
        .map(|y| {
            let mut s = 0;
            for i in 0..k {
                for j in 0..k {
                    s += h[i] * h[j] * n(cs[i], cs[j], cs[y]);
                }
            }
            s
        })
        .collect();
    if g == 3 {
        return Ok((0..k).map(|y| u[y] * h[y]).sum());
    }
    // one interior lollipop per step
    let step: Vec<Vec<u128>> = (0..k)
        .map(|y| {
            (0..k)
                .map(|z| (0..k).map(|x| h[x] * n(cs[y], cs[x], cs[z])).sum())
                .collect()
        })
        .collect();
    let mut w = u.clone();
    for _ in 0..g - 4 {
        w = (0..k)
            .map(|z| (0..k).map(|y| w[y] * step[y][z]).sum())
            .collect();
    }
    Ok((0..k).map(|y| w[y] * u[y]).sum())
}

/// Colorings of the theta graph: admissible triples of even colors.
pub fn transfer_count_theta(p: Prime) -> u128 {
    let cs = colors(p);
    let n = fusion(p);
    let mut s = 0;
    for &x in &cs {
        for &y in &cs {
            for &z in &cs {
                s += n(x, y, z);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_routes() {
        for p in [5u32, 7, 11, 13] {
            let p = Prime::new(p).unwrap();
            assert_eq!(transfer_count_lollipop(2, p).unwrap(), transfer_count_theta(p));
        }
        assert_eq!(transfer_count_theta(Prime::new(5).unwrap()), 5);
    }
}
