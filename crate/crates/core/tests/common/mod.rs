#![allow(dead_code)]

use std::sync::OnceLock;

use pathcrystal::crystal::ls_paths;
use pathcrystal::rootsystem::{CartanType, RootSystem, Weight};
use pathcrystal::{AffineWeight, Path};

pub fn sys(t: CartanType, r: usize) -> RootSystem {
    RootSystem::new(t, r).expect("valid type")
}

/// Dominant integral weights with `dim V(λ) ≤ bound`. Dimension grows in
/// every coordinate, so each coordinate is capped by its own axis.
pub fn dominant_weights_up_to(rs: &RootSystem, bound: u128) -> Vec<Weight> {
    let r = rs.rank();
    let caps: Vec<i64> = (1..=r)
        .map(|i| {
            let mut c = 0;
            while rs.weyl_dimension(&Weight::fundamental(r, i).scale((c + 1).into())).unwrap() <= bound {
                c += 1;
            }
            c
        })
        .collect();
    let mut out = Vec::new();
    let mut coords = vec![0i64; r];
    loop {
        let w = Weight::from_ints(&coords);
        if rs.weyl_dimension(&w).unwrap() <= bound {
            out.push(w);
        }
        let Some(k) = (0..r).find(|&k| coords[k] < caps[k]) else {
            return out;
        };
        coords[k] += 1;
        coords[..k].iter_mut().for_each(|c| *c = 0);
    }
}

/// Root system together with LS path sets for a few small highest weights.
pub struct Pool {
    pub rs: RootSystem,
    pub ls: Vec<Vec<Path>>,
    pub dominant: Vec<Weight>,
}

pub fn pools() -> &'static [Pool] {
    static POOLS: OnceLock<Vec<Pool>> = OnceLock::new();
    POOLS.get_or_init(|| {
        let shape: Vec<(CartanType, usize, Vec<Vec<i64>>)> = vec![
            (CartanType::A, 1, vec![vec![1], vec![2], vec![3]]),
            (CartanType::A, 2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]]),
            (CartanType::B, 2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
            (CartanType::C, 2, vec![vec![1, 0], vec![0, 1], vec![0, 2]]),
            (CartanType::G, 2, vec![vec![1, 0], vec![0, 1]]),
            (CartanType::A, 3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1]]),
        ];
        shape.into_iter()
            .map(|(t, r, ws)| {
                let rs = sys(t, r);
                let dominant: Vec<Weight> = ws.iter().map(|c| Weight::from_ints(c)).collect();
                let ls = dominant
                    .iter()
                    .map(|w| ls_paths(&rs, w, 10_000).unwrap().into_iter().collect())
                    .collect();
                Pool { rs, ls, dominant }
            })
            .collect()
    })
}

/// Concatenation of LS paths chosen by the index list, optionally prefixed
/// by `Λ₀` so the affine operator `f₀` has room to act.
pub fn random_path(pool: &Pool, picks: &[(usize, usize)], level_one: bool) -> Path {
    let r = pool.rs.rank();
    let mut p = if level_one {
        Path::straight(AffineWeight::lambda0(r))
    } else {
        Path::empty()
    };
    for &(w, k) in picks {
        let set = &pool.ls[w % pool.ls.len()];
        p = p.concat(&set[k % set.len()]);
    }
    p
}
