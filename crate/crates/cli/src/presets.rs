use clap::ValueEnum;
use phasecov::dynamics::{DecoherenceRates, TimeGrid};
use phasecov::mixtures::{EtaFamilyMixtureSpec, SemigroupMixtureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Semigroup with gamma_plus = 1.
    AmplitudeDamping,
    /// Semigroup with gamma_minus = 1.
    InverseAmplitudeDamping,
    /// Semigroup with gamma3 = 1.
    PureDephasing,
    /// Equal mixture of the two amplitude dampings; unital.
    #[value(name = "example-1")]
    Example1,
    /// Eta-family mixture with a cosine-modulated component; invertible.
    #[value(name = "example-2")]
    Example2,
    /// Generalized amplitude damping, weights (0.3, 0.7, 0), rates (1, 1, 1).
    Exmsg,
}

/// What a preset resolves to.
pub enum PresetModel {
    Semigroup(DecoherenceRates),
    SemigroupMixture(SemigroupMixtureSpec),
    EtaMixture(EtaFamilyMixtureSpec),
}

impl Preset {
    /// The name accepted on the command line.
    pub fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default()
    }

    pub fn model(self, grid: &TimeGrid) -> PresetModel {
        match self {
            Self::AmplitudeDamping => PresetModel::Semigroup(DecoherenceRates::new(1.0, 0.0, 0.0)),
            Self::InverseAmplitudeDamping => PresetModel::Semigroup(DecoherenceRates::new(0.0, 1.0, 0.0)),
            Self::PureDephasing => PresetModel::Semigroup(DecoherenceRates::new(0.0, 0.0, 1.0)),
            Self::Example1 => PresetModel::SemigroupMixture(
                SemigroupMixtureSpec::new([0.5, 0.5, 0.0], [0.5, 0.5, 0.0]).expect("valid preset"),
            ),
            Self::Example2 => PresetModel::EtaMixture(EtaFamilyMixtureSpec::cosine_example(grid)),
            Self::Exmsg => PresetModel::SemigroupMixture(
                SemigroupMixtureSpec::new([0.3, 0.7, 0.0], [1.0, 1.0, 1.0]).expect("valid preset"),
            ),
        }
    }
}
