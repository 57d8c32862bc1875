use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::syntax::{Alphabet, Atom, Program, Rule};

/// Atom names used by the generator, in order.
pub const GENERATOR_ATOMS: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// Number of atoms, 1 to 6; the first ones of [`GENERATOR_ATOMS`] are used.
    pub atom_count: usize,
    pub max_rules: usize,
    /// Upper bound on the atoms drawn for each of the four rule parts.
    pub max_atoms_per_part: usize,
    pub seed: u64,
    pub allow_head_negation: bool,
    /// Whether a rule may have all four parts empty (`:- .`).
    pub allow_empty_rules: bool,
}

impl Default for GeneratorConfig {
    fn default() -> GeneratorConfig {
        GeneratorConfig {
            atom_count: 3,
            max_rules: 4,
            max_atoms_per_part: 2,
            seed: 0,
            allow_head_negation: true,
            allow_empty_rules: true,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=GENERATOR_ATOMS.len()).contains(&self.atom_count) {
            return Err(Error::Profile(format!(
                "generator atom count must be between 1 and {}, got {}",
                GENERATOR_ATOMS.len(),
                self.atom_count
            )));
        }
        Ok(())
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::from_names(&GENERATOR_ATOMS[..self.atom_count.clamp(1, GENERATOR_ATOMS.len())])
    }
}

/// A deterministic stream of random programs.
#[derive(Debug, Clone)]
pub struct ProgramGenerator {
    cfg: GeneratorConfig,
    atoms: Vec<Atom>,
    rng: ChaCha8Rng,
}

impl ProgramGenerator {
    pub fn new(cfg: GeneratorConfig) -> Result<ProgramGenerator> {
        Self::for_trial(cfg, 0)
    }

    /// Independent stream number `trial` under the configured seed.
    pub fn for_trial(cfg: GeneratorConfig, trial: u64) -> Result<ProgramGenerator> {
        cfg.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial);
        Ok(ProgramGenerator {
            atoms: cfg.alphabet().atoms().to_vec(),
            cfg,
            rng,
        })
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.cfg
    }

    pub fn alphabet(&self) -> Alphabet {
        self.cfg.alphabet()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn part(&mut self) -> Vec<Atom> {
        let n = self.rng.gen_range(0..=self.cfg.max_atoms_per_part.min(self.atoms.len()));
        self.atoms.choose_multiple(&mut self.rng, n).cloned().collect()
    }

    fn rule(&mut self) -> Rule {
        loop {
            let head_pos = self.part();
            let head_neg = if self.cfg.allow_head_negation { self.part() } else { Vec::new() };
            let body_pos = self.part();
            let body_neg = self.part();
            let rule = Rule::new(head_pos, head_neg, body_pos, body_neg);
            if self.cfg.allow_empty_rules || rule.atoms().next().is_some() {
                return rule;
            }
        }
    }

    pub fn next_program(&mut self) -> Program {
        let n = self.rng.gen_range(0..=self.cfg.max_rules);
        Program::from_rules((0..n).map(|_| self.rule()))
    }
}

/// The first program of the configured stream.
pub fn random_program(cfg: GeneratorConfig) -> Result<Program> {
    Ok(ProgramGenerator::new(cfg)?.next_program())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::se::se_models;

    #[test]
    fn deterministic() {
        let cfg = GeneratorConfig {
            seed: 42,
            ..GeneratorConfig::default()
        };
        let mut a = ProgramGenerator::new(cfg).unwrap();
        let mut b = ProgramGenerator::new(cfg).unwrap();
        for _ in 0..20 {
            assert_eq!(a.next_program(), b.next_program());
        }
        let mut other = ProgramGenerator::for_trial(cfg, 1).unwrap();
        let first: Vec<Program> = (0..5).map(|_| a.next_program()).collect();
        let second: Vec<Program> = (0..5).map(|_| other.next_program()).collect();
        assert_ne!(first, second);
    }

    #[test]
    fn respects_bounds() {
        let cfg = GeneratorConfig {
            atom_count: 3,
            max_rules: 5,
            seed: 7,
            allow_head_negation: false,
            allow_empty_rules: false,
            ..GeneratorConfig::default()
        };
        let mut g = ProgramGenerator::new(cfg).unwrap();
        let a = g.alphabet();
        for _ in 0..200 {
            let p = g.next_program();
            assert!(p.len() <= 5);
            assert!(p.occurring_atoms().iter().all(|x| a.contains(x)));
            assert!(p.is_disjunctive());
            assert!(p.rules().iter().all(|r| r.atoms().next().is_some()));
            assert!(se_models(&p, &a).unwrap().is_complete().unwrap());
        }
    }

    #[test]
    fn rejects_bad_atom_count() {
        for n in [0, 7] {
            let cfg = GeneratorConfig {
                atom_count: n,
                ..GeneratorConfig::default()
            };
            assert!(ProgramGenerator::new(cfg).is_err());
        }
    }
}
