//! `cmlcrypt`: key generation, encryption and analysis from the command line.
//!
//! Exit codes: 0 success, 1 usage, 2 image/format/IO error, 3 key error,
//! 4 mode error (the literal cipher has no inverse).

use clap::{Parser, Subcommand, ValueEnum};
use cmlcrypt::analysis::{self, Direction, KeySchema, NpcrDefinition};
use cmlcrypt::keyfile::{self, KeyFileError};
use cmlcrypt::pgm::{self, PgmError};
use cmlcrypt::{cipher, write_atomic, CipherKey, CipherMode, Ciphertext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cmlcrypt", version, about = "Coupled-map-lattice image cipher")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Literal,
    Repaired,
}

impl From<ModeArg> for CipherMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Literal => CipherMode::PaperLiteral,
            ModeArg::Repaired => CipherMode::Repaired,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NpcrArg {
    Standard,
    Paper,
}

#[derive(Subcommand)]
enum Command {
    /// Write a new key file
    Keygen {
        #[arg(long)]
        out: PathBuf,
        /// Derive the key deterministically from this seed instead of OS entropy
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Encrypt a PGM image
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the key's cipher mode
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Decrypt a PGM image (repaired mode only)
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Histogram, mean and adjacent-pixel correlations of one image
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = analysis::DEFAULT_PAIRS)]
        pairs: usize,
        #[arg(long = "sample-seed", default_value_t = 0)]
        sample_seed: u64,
        #[arg(long)]
        report: PathBuf,
        /// Also write histogram.csv and scatter_<direction>.csv here
        #[arg(long = "csv-dir")]
        csv_dir: Option<PathBuf>,
    },
    /// NPCR and UACI between two images
    Diff {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long = "npcr-def", value_enum, default_value = "standard")]
        npcr_def: NpcrArg,
    },
    /// Show that the literal cipher ignores the plaintext
    DemoFlaw {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
    },
    /// Key-space size report
    Keyspace {
        #[arg(long, default_value_t = 14)]
        precision: u32,
    },
}

enum Failure {
    Format(String),
    Key(String),
    Mode(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Format(_) => 2,
            Failure::Key(_) => 3,
            Failure::Mode(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Format(m) | Failure::Key(m) | Failure::Mode(m) => m,
        }
    }
}

impl From<PgmError> for Failure {
    fn from(e: PgmError) -> Self {
        Failure::Format(e.to_string())
    }
}

impl From<KeyFileError> for Failure {
    fn from(e: KeyFileError) -> Self {
        Failure::Key(e.to_string())
    }
}

impl From<cmlcrypt::Error> for Failure {
    fn from(e: cmlcrypt::Error) -> Self {
        match e {
            cmlcrypt::Error::LiteralNotInvertible => Failure::Mode(e.to_string()),
            cmlcrypt::Error::InvalidKey(_) => Failure::Key(e.to_string()),
            other => Failure::Format(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: impl Display) -> Failure {
    Failure::Format(format!("{}: {e}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    write_atomic(path, text.as_bytes()).map_err(|e| io_failure(path, e))
}

const FLAW_EXPLANATION: &str = "\
With k1 = mx mod 256 and k2 = my mod 256 the literal rule computes
  e = k1 xor p,  f = k2 xor p,  c = e xor f = k1 xor k2 xor (p xor p) = k1 xor k2,
so every ciphertext pixel is fixed by the key alone and the plaintext
cannot be recovered from it.";

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Keygen { out, seed } => {
            let mut rng = match seed {
                Some(s) => ChaCha8Rng::seed_from_u64(s),
                None => ChaCha8Rng::from_os_rng(),
            };
            keyfile::write_key(&CipherKey::generate(&mut rng), &out)?;
        }
        Command::Encrypt {
            key,
            input,
            out,
            mode,
        } => {
            let mut key = keyfile::read_key(&key)?;
            if let Some(m) = mode {
                key.cipher_mode = m.into();
            }
            let img = pgm::read_pgm(&input)?;
            let ct = cipher::encrypt(img, &key)?;
            pgm::write_pgm(ct.as_image(), &out)?;
        }
        Command::Decrypt { key, input, out } => {
            let key = keyfile::read_key(&key)?;
            if key.cipher_mode == CipherMode::PaperLiteral {
                return Err(Failure::Mode(format!(
                    "{}\n{FLAW_EXPLANATION}",
                    cmlcrypt::Error::LiteralNotInvertible
                )));
            }
            let ct = Ciphertext::from_image(pgm::read_pgm(&input)?);
            let img = cipher::decrypt(ct, &key)?;
            pgm::write_pgm(&img, &out)?;
        }
        Command::Analyze {
            input,
            pairs,
            sample_seed,
            report,
            csv_dir,
        } => {
            let img = pgm::read_pgm(&input)?;
            let rep = analysis::analyze_image(&img, pairs, sample_seed)?;
            if let Some(dir) = csv_dir {
                std::fs::create_dir_all(&dir).map_err(|e| io_failure(&dir, e))?;
                write_text(
                    &dir.join("histogram.csv"),
                    &analysis::histogram_csv(&rep.histogram),
                )?;
                for d in Direction::ALL {
                    if let Ok(csv) = analysis::scatter_csv(&img, d, pairs, sample_seed) {
                        write_text(&dir.join(format!("scatter_{}.csv", d.name())), &csv)?;
                    }
                }
            }
            write_text(&report, &rep.to_key_value())?;
            print!("{}", rep.to_table());
        }
        Command::Diff { a, b, npcr_def } => {
            let a = pgm::read_pgm(&a)?;
            let b = pgm::read_pgm(&b)?;
            let def = match npcr_def {
                NpcrArg::Standard => NpcrDefinition::Standard,
                NpcrArg::Paper => NpcrDefinition::PaperInverted,
            };
            print!("{}", analysis::diff_report(&a, &b, def)?.to_key_value());
        }
        Command::DemoFlaw { key, input, input2 } => {
            let mut key = keyfile::read_key(&key)?;
            key.cipher_mode = CipherMode::PaperLiteral;
            let a = pgm::read_pgm(&input)?;
            let b = pgm::read_pgm(&input2)?;
            a.same_shape(&b)?;
            let plain_differ = a
                .flatten()
                .iter()
                .zip(b.flatten())
                .filter(|(x, y)| x != y)
                .count();
            let ca = cipher::encrypt_literal(a, &key)?;
            let cb = cipher::encrypt_literal(b, &key)?;
            println!("plaintext pixels that differ: {plain_differ}");
            if ca == cb {
                println!(
                    "literal ciphertexts: identical ({} bytes)",
                    ca.as_image().len()
                );
                println!("{FLAW_EXPLANATION}");
            } else {
                return Err(Failure::Mode("literal ciphertexts differ".into()));
            }
        }
        Command::Keyspace { precision } => {
            print!(
                "{}",
                analysis::keyspace_report(precision, &KeySchema::default()).to_table()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
