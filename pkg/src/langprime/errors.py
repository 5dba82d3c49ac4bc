class LangPrimeError(ValueError):
    """Base class for all input errors raised by langprime."""


class AlphabetMismatchError(LangPrimeError):
    pass


class SymbolError(LangPrimeError):
    """A word uses a symbol outside the automaton's alphabet, or a token is malformed."""


class InfiniteLanguageError(LangPrimeError):
    pass


class ParseError(LangPrimeError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PartitionSetError(LangPrimeError):
    pass


class NotInLanguageError(LangPrimeError):
    """Precondition violation: the word passed to the split-relation checker is not in L."""


class LimitExceededError(LangPrimeError):
    pass


class DegenerateInstanceError(LangPrimeError):
    """The instance is too small for the gadget construction.

    ``answer`` carries the directly computed result so callers do not have to
    redo the trivial case analysis.
    """

    def __init__(self, message, answer=None):
        super().__init__(message)
        self.answer = answer
