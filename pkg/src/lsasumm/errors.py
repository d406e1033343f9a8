"""Exception hierarchy shared by the pipeline and the CLI.

Each error carries the process exit code the CLI maps it to.
"""


class LsaSummError(Exception):
    exit_code = 1


class ConfigError(LsaSummError):
    exit_code = 2


class InvalidCode(ConfigError):
    """Experiment code that does not follow the code grammar."""

    def __init__(self, code: str, segment: str):
        super().__init__(f"invalid experiment code {code!r}: cannot parse {segment!r}")
        self.code = code
        self.segment = segment


class CorpusError(LsaSummError):
    exit_code = 3


class EmptyDocument(CorpusError):
    pass


class EmptyVocabulary(CorpusError):
    pass


class EmptyCorpus(CorpusError):
    pass


class MissingTags(CorpusError):
    pass


class NoReferences(CorpusError):
    pass


class NumericalError(LsaSummError):
    exit_code = 4


class NumericalFailure(NumericalError):
    pass


class DegenerateSpectrum(NumericalError):
    pass
