# errors.py
# exception classes for the failures that callers need to tell apart.
# plain validation problems are still raised as ValueError everywhere.


class EncoderMissingError(RuntimeError):

  def __init__(self, binary):
    self.binary = binary
    super().__init__(f"External encoder not found: {binary}")


class EncoderError(RuntimeError):

  def __init__(self, command, returncode, stderr=''):
    self.command = command
    self.returncode = returncode
    self.stderr = stderr
    message = f"Encoder command {command!r} exited with status {returncode}"
    if stderr:
      message += f": {stderr.strip()[-500:]}"
    super().__init__(message)


class PluginError(RuntimeError):

  def __init__(self, command, message, line_number=None):
    self.command = command
    self.line_number = line_number
    if line_number is not None:
      message = f"{message} (line {line_number})"
    super().__init__(f"Plugin {command!r}: {message}")


class ManifestError(ValueError):

  def __init__(self, message, line_number=None):
    self.line_number = line_number
    if line_number is not None:
      message = f"line {line_number}: {message}"
    super().__init__(message)


class EmbeddingFormatError(ValueError):

  def __init__(self, message, row_number=None):
    self.row_number = row_number
    if row_number is not None:
      message = f"row {row_number}: {message}"
    super().__init__(message)
