def format_float(value):
    """ Shortest decimal that round-trips to the same double. """
    if value is None:
        return ''

    return repr(float(value))


def format_pass(value):
    if value is None:
        return "n/a"
    elif value:
        return "PASS"
    else:
        return "FAIL"


def format_termination(termination):
    if termination.status == 'completed':
        return f'completed(t={format_float(termination.t)})'
    else:
        return f'blowup({termination.reason}, t={format_float(termination.t)})'
