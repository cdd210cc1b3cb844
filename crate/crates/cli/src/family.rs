//! Generator specs: a family name followed by whitespace-separated parameters.

use anyhow::{anyhow, bail, Context, Result};
use linforest::extremal::{kary_caterpillar, lower_spider, t1_star, t2_star, t_star};
use linforest::generate::{kary, path, perfect_kary, prufer_decode, random_kary, random_tree, spider, star};
use linforest::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FAMILIES: &str = "path N | star N | spider L1 L2 .. | kary K LEVEL.. (comma lists) | perfect-kary K H | \
prufer S1 S2 .. | random N | random-kary K INTERNAL | lower-spider N D | tstar N D | t1star N D | t2star N D | \
caterpillar N K";

fn nums(params: &[String]) -> Result<Vec<usize>> {
    params
        .iter()
        .map(|p| p.parse::<usize>().with_context(|| format!("not a non-negative integer: {p:?}")))
        .collect()
}

fn exactly<const N: usize>(family: &str, params: &[String]) -> Result<[usize; N]> {
    let values = nums(params)?;
    values
        .try_into()
        .map_err(|_| anyhow!("{family} takes {N} parameter(s), got {}", params.len()))
}

fn need_seed(family: &str, seed: Option<u64>) -> Result<u64> {
    seed.ok_or_else(|| anyhow!("{family} is random: pass --seed"))
}

/// Builds the graph named by `family` and `params`.
pub fn build(family: &str, params: &[String], seed: Option<u64>) -> Result<Graph> {
    let g = match family {
        "path" => path(exactly::<1>(family, params)?[0])?,
        "star" => star(exactly::<1>(family, params)?[0])?,
        "spider" => spider(&nums(params)?)?,
        "kary" => {
            let (k, levels) = params.split_first().ok_or_else(|| anyhow!("kary needs K"))?;
            let k: usize = k.parse().with_context(|| format!("bad arity {k:?}"))?;
            let levels = levels
                .iter()
                .map(|l| nums(&l.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect::<Vec<_>>()))
                .collect::<Result<Vec<_>>>()?;
            kary(k, &levels)?
        }
        "perfect-kary" => {
            let [k, h] = exactly(family, params)?;
            perfect_kary(k, h)?
        }
        "prufer" => prufer_decode(&nums(params)?)?,
        "random" => random_tree(exactly::<1>(family, params)?[0], need_seed(family, seed)?)?,
        "random-kary" => {
            let [k, internal] = exactly(family, params)?;
            random_kary(k, internal, &mut ChaCha8Rng::seed_from_u64(need_seed(family, seed)?))?
        }
        "lower-spider" => {
            let [n, d] = exactly(family, params)?;
            lower_spider(n, d)?
        }
        "tstar" => {
            let [n, d] = exactly(family, params)?;
            t_star(n, d)?
        }
        "t1star" => {
            let [n, d] = exactly(family, params)?;
            t1_star(n, d)?
        }
        "t2star" => {
            let [n, d] = exactly(family, params)?;
            t2_star(n, d)?
        }
        "caterpillar" => {
            let [n, k] = exactly(family, params)?;
            kary_caterpillar(n, k)?
        }
        other => bail!("unknown family {other:?}; expected one of: {FAMILIES}"),
    };
    Ok(g)
}

/// Parses an inline spec such as `"perfect-kary 2 3"`.
pub fn build_inline(spec: &str, seed: Option<u64>) -> Result<Graph> {
    let mut words = spec.split_whitespace().map(str::to_string);
    let family = words.next().ok_or_else(|| anyhow!("empty generator spec"))?;
    build(&family, &words.collect::<Vec<_>>(), seed)
}
