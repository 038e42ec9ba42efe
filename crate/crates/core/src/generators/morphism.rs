use std::fmt;

use crate::core::{Alphabet, Sym, Word};
use crate::error::{Result, SeqError};

/// A morphism `φ: A* -> B*` given by letter images.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Vec<Sym>>,
    erasing: bool,
}

impl Morphism {
    /// Nonerasing morphism. `images[a]` is the image of source symbol `a`.
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Vec<Sym>>) -> Result<Self> {
        Self::build(source, target, images, false)
    }

    /// Morphism that may map letters to Λ.
    pub fn erasing(source: Alphabet, target: Alphabet, images: Vec<Vec<Sym>>) -> Result<Self> {
        Self::build(source, target, images, true)
    }

    fn build(source: Alphabet, target: Alphabet, images: Vec<Vec<Sym>>, erasing: bool) -> Result<Self> {
        if images.len() != source.len() {
            return Err(SeqError::InvalidArgument(format!(
                "{} images for {} source letters",
                images.len(),
                source.len()
            )));
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() && !erasing {
                return Err(SeqError::InvalidArgument(format!(
                    "image of `{}` is empty but erasing is disabled",
                    source.name(a as Sym)
                )));
            }
            if img.iter().any(|&s| !target.contains(s)) {
                return Err(SeqError::UnknownSymbol(format!("in image of `{}`", source.name(a as Sym))));
            }
        }
        Ok(Morphism { source, target, images, erasing })
    }

    /// Endomorphism from images written as words over `alphabet`.
    pub fn endo(alphabet: &Alphabet, images: &[&str]) -> Result<Self> {
        let imgs = images.iter().map(|t| alphabet.parse(t)).collect::<Result<Vec<_>>>()?;
        Self::new(alphabet.clone(), alphabet.clone(), imgs)
    }

    /// Parses `a->w,b->v,...`. Source letters keep their listed order; the target alphabet is
    /// `target` if given, else the source alphabet extended by new letters in order of appearance.
    /// `-` denotes Λ and requires `allow_erasing`.
    pub fn parse(text: &str, target: Option<&Alphabet>, allow_erasing: bool) -> Result<Self> {
        let mut src = Vec::new();
        let mut raw = Vec::new();
        for (k, part) in text.split(',').enumerate() {
            let (a, w) = part.split_once("->").ok_or_else(|| SeqError::Parse {
                line: 1,
                msg: format!("rule {} lacks `->`: `{part}`", k + 1),
            })?;
            src.push(a.trim().to_string());
            raw.push(w.trim().to_string());
        }
        let source = Alphabet::new(src.clone())?;
        let target = match target {
            Some(t) => t.clone(),
            None => {
                let mut names = src.clone();
                for w in &raw {
                    if w == "-" {
                        continue;
                    }
                    for c in w.chars() {
                        let c = c.to_string();
                        if !names.contains(&c) {
                            names.push(c);
                        }
                    }
                }
                Alphabet::new(names)?
            }
        };
        let images = raw
            .iter()
            .map(|w| if w == "-" { Ok(Vec::new()) } else { target.parse(w) })
            .collect::<Result<Vec<_>>>()?;
        Self::build(source, target, images, allow_erasing)
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, a: Sym) -> &[Sym] {
        &self.images[a as usize]
    }

    pub fn images(&self) -> &[Vec<Sym>] {
        &self.images
    }

    pub fn is_erasing(&self) -> bool {
        self.erasing
    }

    /// `Some(k)` when every image has length `k`.
    pub fn uniform_length(&self) -> Option<usize> {
        let k = self.images[0].len();
        self.images.iter().all(|i| i.len() == k).then_some(k)
    }

    pub fn is_coding(&self) -> bool {
        self.uniform_length() == Some(1)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn apply_syms(&self, w: &[Sym]) -> Vec<Sym> {
        let mut out = Vec::new();
        for &a in w {
            out.extend_from_slice(&self.images[a as usize]);
        }
        out
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != &self.source {
            return Err(SeqError::AlphabetMismatch("word is not over the source alphabet".into()));
        }
        Word::new(self.target.clone(), self.apply_syms(w.letters()))
    }

    /// Letters whose iterated images eventually vanish (endomorphisms only).
    pub fn mortal_letters(&self) -> Vec<Sym> {
        let k = self.source.len();
        let mut mortal = vec![false; k];
        loop {
            let mut changed = false;
            for a in 0..k {
                if !mortal[a] && self.images[a].iter().all(|&b| (b as usize) < k && mortal[b as usize]) {
                    mortal[a] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..k).filter(|&a| mortal[a]).map(|a| a as Sym).collect()
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .source
            .symbols()
            .map(|a| {
                let img = &self.images[a as usize];
                let w = if img.is_empty() { "-".to_string() } else { self.target.render(img) };
                format!("{}->{}", self.source.name(a), w)
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({self})")
    }
}
