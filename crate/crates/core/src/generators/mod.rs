//! Synthetic textile structures for sixteen categories, and the
//! perturbation protocol used to build evaluation corpora.
//!
//! Every generator places crossings in the plane and lays threads through
//! them; the placement is kept on the graph so that rotations and mirror
//! images can be applied later. Output is deterministic in
//! `(family, rows, cols, seed)`.

mod braid;
mod builder;
mod chainmail;
mod knit;
mod transform;
mod triaxial;
mod weave;

pub use transform::{flip_crossings, perturb, transform, Mirror, PerturbationPlan, Rotation, Transform};

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::TextileGraph;
use builder::Builder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    PlainWeave,
    /// Weft passes over `over` warps, then under `under`.
    Twill { over: u32, under: u32 },
    /// Weft floats over `float` warps between binding points.
    Satin { float: u32 },
    Andean,
    VietWeave,
    Triaxial,
    WeftKnit,
    WarpKnit,
    ChainMail,
    Braid { strands: u32 },
    /// All warps lie above all wefts.
    WarpAbove,
    VietMix,
}

/// Twill ratios with a category of their own.
pub const TWILLS: [(u32, u32); 5] = [(2, 1), (2, 2), (3, 1), (3, 3), (4, 4)];

pub const DEFAULT_SATIN_FLOAT: u32 = 4;
pub const DEFAULT_BRAID_STRANDS: u32 = 4;

impl Family {
    /// The sixteen corpus categories with their default parameters.
    pub fn categories() -> [Family; 16] {
        let t = |(over, under)| Family::Twill { over, under };
        [
            Family::PlainWeave,
            t(TWILLS[0]),
            t(TWILLS[1]),
            t(TWILLS[2]),
            t(TWILLS[3]),
            t(TWILLS[4]),
            Family::Satin {
                float: DEFAULT_SATIN_FLOAT,
            },
            Family::Andean,
            Family::VietWeave,
            Family::Triaxial,
            Family::WeftKnit,
            Family::WarpKnit,
            Family::ChainMail,
            Family::Braid {
                strands: DEFAULT_BRAID_STRANDS,
            },
            Family::WarpAbove,
            Family::VietMix,
        ]
    }

    /// Category label; parameters other than the twill ratio are not part of
    /// it.
    pub fn label(&self) -> String {
        match self {
            Family::PlainWeave => "plain".into(),
            Family::Twill { over, under } => format!("twill-{over}-{under}"),
            Family::Satin { .. } => "satin".into(),
            Family::Andean => "andean".into(),
            Family::VietWeave => "viet-weave".into(),
            Family::Triaxial => "triaxial".into(),
            Family::WeftKnit => "weft-knit".into(),
            Family::WarpKnit => "warp-knit".into(),
            Family::ChainMail => "chain-mail".into(),
            Family::Braid { .. } => "braid".into(),
            Family::WarpAbove => "warp-above".into(),
            Family::VietMix => "viet-mix".into(),
        }
    }

    /// Whether the family is a plain grid of one weft per row and one warp
    /// per column.
    pub fn is_grid(&self) -> bool {
        matches!(
            self,
            Family::PlainWeave
                | Family::Twill { .. }
                | Family::Satin { .. }
                | Family::Andean
                | Family::VietWeave
                | Family::WarpAbove
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts category labels, plus `satin-<float>`, `braid-<strands>` and
    /// `twill-<over>-<under>` for any ratio.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("unknown family {s:?}"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        Ok(match s {
            "plain" => Family::PlainWeave,
            "satin" => Family::Satin {
                float: DEFAULT_SATIN_FLOAT,
            },
            "andean" => Family::Andean,
            "viet-weave" => Family::VietWeave,
            "triaxial" => Family::Triaxial,
            "weft-knit" => Family::WeftKnit,
            "warp-knit" => Family::WarpKnit,
            "chain-mail" => Family::ChainMail,
            "braid" => Family::Braid {
                strands: DEFAULT_BRAID_STRANDS,
            },
            "warp-above" => Family::WarpAbove,
            "viet-mix" => Family::VietMix,
            _ => {
                if let Some(rest) = s.strip_prefix("twill-") {
                    let (a, b) = rest.split_once('-').ok_or_else(bad)?;
                    Family::Twill {
                        over: num(a)?,
                        under: num(b)?,
                    }
                } else if let Some(rest) = s.strip_prefix("satin-") {
                    Family::Satin { float: num(rest)? }
                } else if let Some(rest) = s.strip_prefix("braid-") {
                    Family::Braid {
                        strands: num(rest)?,
                    }
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

/// What to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PatternSpec {
    pub family: Family,
    /// Crossing-grid height; non-grid families scale to roughly
    /// `rows * cols` crossings.
    pub rows: usize,
    pub cols: usize,
    pub seed: u64,
}

impl PatternSpec {
    pub fn new(family: Family, rows: usize, cols: usize, seed: u64) -> Self {
        PatternSpec {
            family,
            rows,
            cols,
            seed,
        }
    }
}

/// Builds the structure described by `spec`, labelled with its category.
pub fn generate(spec: &PatternSpec) -> Result<TextileGraph> {
    let (rows, cols) = (spec.rows, spec.cols);
    if rows == 0 || cols == 0 {
        return Err(Error::Unsupported(format!(
            "{} needs a non-empty grid, got {rows}x{cols}",
            spec.family
        )));
    }
    let builder = layout(spec)?;
    Ok(builder.build()?.with_label(spec.family.label()))
}

fn layout(spec: &PatternSpec) -> Result<Builder> {
    let (rows, cols) = (spec.rows, spec.cols);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok(match spec.family {
        Family::PlainWeave => weave::grid(rows, cols, weave::plain),
        Family::Twill { over, under } => {
            if over == 0 || under == 0 {
                return Err(Error::Unsupported(format!("twill {over}/{under}")));
            }
            weave::grid(rows, cols, weave::twill(over, under))
        }
        Family::Satin { float } => weave::grid(rows, cols, weave::satin(float)?),
        Family::WarpAbove => weave::grid(rows, cols, |_, _| false),
        Family::Andean => weave::andean(rows, cols, &mut rng),
        Family::VietWeave => weave::viet_weave(rows, cols, &mut rng),
        Family::Triaxial => triaxial::triaxial(rows, cols),
        Family::WeftKnit => knit::weft_knit(rows, cols),
        Family::WarpKnit => knit::warp_knit(rows, cols),
        Family::ChainMail => chainmail::chain_mail(rows, cols),
        Family::Braid { strands } => braid::braids(rows, cols, strands as usize)?,
        Family::VietMix => viet_mix(rows, cols, &mut rng)?,
    })
}

/// Side-by-side patches of a woven ground, chain mail and a braid.
fn viet_mix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Result<Builder> {
    let ground_share = rng.gen_range(0.35..0.55);
    let mail_share = rng.gen_range(0.25..0.40);
    let share = |f: f64| ((cols as f64 * f).round() as usize).max(1);
    let ground_cols = share(ground_share);
    let mail_cols = share(mail_share).max(2);
    let braid_cols = cols
        .saturating_sub(ground_cols + mail_cols)
        .max(DEFAULT_BRAID_STRANDS as usize);
    let ground = match rng.gen_range(0..3) {
        0 => weave::grid(rows, ground_cols, weave::plain),
        1 => weave::grid(rows, ground_cols, weave::twill(2, 2)),
        _ => weave::grid(rows, ground_cols, weave::satin(DEFAULT_SATIN_FLOAT)?),
    };
    let mail = chainmail::chain_mail(rows.max(4), mail_cols);
    let braid = braid::braids(rows, braid_cols, DEFAULT_BRAID_STRANDS as usize)?;

    let mut out = Builder::new();
    let mut x = 0;
    for mut part in [ground, mail, braid] {
        if let Some([x0, y0, x1, _]) = part.bounds() {
            part.translate(x - x0, -y0);
            x += x1 - x0 + 8;
        }
        out.absorb(part);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate;

    #[test]
    fn sixteen_distinct_labels() {
        let mut labels: Vec<String> = Family::categories().iter().map(Family::label).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 16);
        for f in Family::categories() {
            assert_eq!(f.label().parse::<Family>().unwrap().label(), f.label());
        }
    }

    #[test]
    fn every_family_is_valid() {
        for f in Family::categories() {
            for seed in 0..3 {
                let g = generate(&PatternSpec::new(f, 12, 12, seed)).unwrap();
                assert!(validate(&g).is_empty(), "{f}");
                assert!(g.crossing_count() > 0, "{f}");
                assert_eq!(g.label(), Some(f.label().as_str()));
            }
        }
    }

    #[test]
    fn grid_counts() {
        for f in Family::categories().into_iter().filter(Family::is_grid) {
            let g = generate(&PatternSpec::new(f, 7, 9, 1)).unwrap();
            assert_eq!(g.crossing_count(), 63, "{f}");
            assert_eq!(g.terminal_count(), 2 * (7 + 9), "{f}");
        }
    }

    #[test]
    fn deterministic() {
        for f in Family::categories() {
            let a = generate(&PatternSpec::new(f, 10, 10, 5)).unwrap();
            let b = generate(&PatternSpec::new(f, 10, 10, 5)).unwrap();
            assert_eq!(crate::graph::serialize(&a), crate::graph::serialize(&b));
        }
    }

    #[test]
    fn braid_narrower_than_strands() {
        assert!(generate(&PatternSpec::new(Family::Braid { strands: 5 }, 4, 3, 0)).is_err());
    }

    #[test]
    fn empty_grid_rejected() {
        assert!(generate(&PatternSpec::new(Family::PlainWeave, 0, 3, 0)).is_err());
    }
}
