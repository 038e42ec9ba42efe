use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use apseq::generators::*;
use apseq::{Alphabet, Sequence, Word};

use crate::error::CliError;

struct Family {
    name: &'static str,
    required: &'static [&'static str],
    optional: &'static [&'static str],
}

/// Parameters whose value must be an `@path` reference.
const FILE_ONLY: &[&str] = &["dfao", "file"];

const FAMILIES: &[Family] = &[
    Family { name: "thue_morse", required: &[], optional: &["definition"] },
    Family { name: "fibonacci", required: &[], optional: &[] },
    Family { name: "mechanical", required: &["alpha"], optional: &["rho", "variant"] },
    Family { name: "morphic", required: &["morphism"], optional: &["seed", "coding"] },
    Family { name: "automatic", required: &["dfao"], optional: &[] },
    Family { name: "block_product", required: &["first", "cycle"], optional: &[] },
    Family { name: "keane", required: &[], optional: &[] },
    Family { name: "alternating_prefix", required: &[], optional: &[] },
    Family { name: "scheme", required: &["file"], optional: &["mode", "preamble", "policy"] },
    Family { name: "toeplitz", required: &["pattern"], optional: &[] },
    Family { name: "kolakoski", required: &[], optional: &[] },
    Family { name: "alternating_morphic", required: &[], optional: &["morphisms", "seed"] },
    Family { name: "periodic", required: &["period"], optional: &["alphabet"] },
    Family { name: "eventually_periodic", required: &["pre", "period"], optional: &["alphabet"] },
    Family { name: "constant", required: &["letter"], optional: &["alphabet"] },
    Family { name: "counter", required: &["m"], optional: &[] },
    Family { name: "random", required: &[], optional: &["seed", "k"] },
    Family { name: "progression_rewrite", required: &["levels"], optional: &["seed", "k"] },
    Family { name: "aperiodicity_witness", required: &["k"], optional: &[] },
];

/// One line per family: name, required keys, then optional keys in brackets.
pub fn family_lines() -> impl Iterator<Item = String> {
    FAMILIES.iter().map(|f| {
        let mut parts = vec![f.name.to_string()];
        parts.extend(f.required.iter().map(|k| k.to_string()));
        parts.extend(f.optional.iter().map(|k| format!("[{k}]")));
        parts.join(" ")
    })
}

/// A family name with its parameters, printed as `family key=value ...` in key order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub family: String,
    pub params: BTreeMap<String, String>,
}

impl SequenceSpec {
    pub fn new(family: &str, params: BTreeMap<String, String>) -> Result<Self, CliError> {
        let fam = FAMILIES
            .iter()
            .find(|f| f.name == family)
            .ok_or_else(|| CliError::Spec(format!("unknown family `{family}`")))?;
        for (k, v) in &params {
            if !fam.required.contains(&k.as_str()) && !fam.optional.contains(&k.as_str()) {
                return Err(CliError::Spec(format!("unknown parameter `{k}` for family `{family}`")));
            }
            if v.is_empty() || v.chars().any(char::is_whitespace) {
                return Err(CliError::Spec(format!("parameter `{k}` needs a nonempty value without spaces")));
            }
            if FILE_ONLY.contains(&k.as_str()) && !v.starts_with('@') {
                return Err(CliError::Spec(format!("parameter `{k}` must be a file reference (@path)")));
            }
        }
        if let Some(k) = fam.required.iter().find(|k| !params.contains_key(**k)) {
            return Err(CliError::Spec(format!("missing parameter `{k}` for family `{family}`")));
        }
        Ok(SequenceSpec { family: family.to_string(), params })
    }

    /// Reads inline text, or the contents of a file when `text` is `@path`.
    pub fn load(text: &str) -> Result<Self, CliError> {
        match text.strip_prefix('@') {
            Some(path) => {
                let body = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Spec(format!("cannot read spec file {path}: {e}")))?;
                body.parse()
            }
            None => text.parse(),
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn req(&self, key: &str) -> &str {
        self.get(key).expect("required parameters are checked on construction")
    }

    fn num<T: FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| CliError::Spec(format!("parameter `{key}`: cannot read `{v}`"))),
        }
    }

    fn typed<T: FromStr<Err = apseq::SeqError>>(&self, key: &str, default: T) -> Result<T, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|e| CliError::Spec(format!("parameter `{key}`: {e}"))),
        }
    }

    fn file(&self, key: &str) -> Result<String, CliError> {
        let path = &self.req(key)[1..];
        std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Spec(format!("parameter `{key}`: cannot read {path}: {e}")))
    }

    /// Alphabet from the `alphabet` parameter, else binary when the letters allow it, else the
    /// sorted letters of `words`.
    fn alphabet_for(&self, words: &[&str]) -> Result<Alphabet, CliError> {
        let names: Vec<String> = match self.get("alphabet") {
            Some(a) => a.chars().map(String::from).collect(),
            None => {
                let mut v: Vec<String> = words.iter().flat_map(|w| w.chars()).map(String::from).collect();
                v.sort();
                v.dedup();
                if v.iter().all(|c| c == "0" || c == "1") {
                    return Ok(Alphabet::binary());
                }
                v
            }
        };
        Ok(Alphabet::new(names)?)
    }

    fn word(&self, alphabet: &Alphabet, key: &str) -> Result<Word, CliError> {
        Word::parse(alphabet, self.req(key)).map_err(|e| CliError::Spec(format!("parameter `{key}`: {e}")))
    }

    /// Builds the sequence. `seed` drives randomized scheme policies.
    pub fn build(&self, seed: u64) -> Result<Sequence, CliError> {
        let s = match self.family.as_str() {
            "thue_morse" => thue_morse(self.typed("definition", TmDefinition::Morphic)?),
            "fibonacci" => fibonacci(),
            "mechanical" => mechanical(
                self.typed("alpha", Real::inv_phi2())?,
                self.typed("rho", Real::rational(0, 1)?)?,
                self.typed("variant", Variant::Lower)?,
            )?,
            "morphic" => {
                let phi = Morphism::parse(self.req("morphism"), None, false)?;
                let seed = match self.get("seed") {
                    Some(a) => phi.source().sym_or_err(a)?,
                    None => 0,
                };
                let coding = self.get("coding").map(|c| Morphism::parse(c, None, false)).transpose()?;
                morphic(&phi, seed, coding.as_ref())?
            }
            "automatic" => automatic(&Dfao::parse(&self.file("dfao")?)?),
            "block_product" => {
                let b = Alphabet::binary();
                let first = self.word(&b, "first")?;
                let cycle = self
                    .req("cycle")
                    .split(',')
                    .map(|w| Word::parse(&b, w))
                    .collect::<Result<Vec<_>, _>>()?;
                block_product_seq(BlockStream::new(first, cycle)?)
            }
            "keane" => keane(),
            "alternating_prefix" => alternating_prefix_example(),
            "scheme" => {
                let scheme = parse_scheme(&self.file("file")?)?;
                let mode = match self.get("mode").unwrap_or("ap") {
                    "ap" => Mode::Ap,
                    "gap" => Mode::Gap { preamble: Word::parse(scheme.alphabet(), self.get("preamble").unwrap_or(""))? },
                    m => return Err(CliError::Spec(format!("parameter `mode`: unknown mode `{m}`"))),
                };
                let policy = match self.get("policy").unwrap_or("least") {
                    "least" => Policy::Least,
                    "random" => Policy::Random(seed),
                    p => return Err(CliError::Spec(format!("parameter `policy`: unknown policy `{p}`"))),
                };
                scheme_generate(&scheme, mode, policy)?
            }
            "toeplitz" => toeplitz(&ToeplitzPattern::parse(self.req("pattern"))?),
            "kolakoski" => kolakoski(),
            "alternating_morphic" => match self.get("morphisms") {
                None => alternating_morphic(&AlternatingMorphismSystem::kolakoski()),
                Some(text) => {
                    let parts: Vec<&str> = text.split(';').collect();
                    let first = Morphism::parse(parts[0], None, false)?;
                    let mut hs = vec![first.clone()];
                    for p in &parts[1..] {
                        hs.push(Morphism::parse(p, Some(first.target()), false)?);
                    }
                    let seed = match self.get("seed") {
                        Some(a) => first.source().sym_or_err(a)?,
                        None => 0,
                    };
                    alternating_morphic(&AlternatingMorphismSystem::new(hs, seed)?)
                }
            },
            "periodic" => {
                let a = self.alphabet_for(&[self.req("period")])?;
                periodic(&self.word(&a, "period")?)?
            }
            "eventually_periodic" => {
                let a = self.alphabet_for(&[self.req("pre"), self.req("period")])?;
                eventually_periodic(&self.word(&a, "pre")?, &self.word(&a, "period")?)?
            }
            "constant" => {
                let a = self.alphabet_for(&[self.req("letter")])?;
                constant(&a, self.req("letter"))?
            }
            "counter" => counter(self.num("m", 0usize)?)?,
            "random" => random_sequence(self.num("seed", 0u64)?, self.num("k", 2usize)?)?,
            "progression_rewrite" => {
                let base = random_sequence(self.num("seed", 0u64)?, self.num("k", 2usize)?)?;
                progression_rewrite(&base, self.typed("levels", Levels::Listed(vec![1]))?)?
            }
            "aperiodicity_witness" => aperiodicity_witness(self.num("k", 0usize)?)?,
            other => unreachable!("family `{other}` passed validation"),
        };
        Ok(s)
    }
}

impl FromStr for SequenceSpec {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let mut tokens = text.split_whitespace();
        let family = tokens.next().ok_or_else(|| CliError::Spec("empty sequence spec".into()))?;
        let mut params = BTreeMap::new();
        for t in tokens {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| CliError::Spec(format!("expected key=value, found `{t}`")))?;
            if params.insert(k.to_string(), v.to_string()).is_some() {
                return Err(CliError::Spec(format!("parameter `{k}` given twice")));
            }
        }
        SequenceSpec::new(family, params)
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}
