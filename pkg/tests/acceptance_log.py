"""Shared record of acceptance results, printed in the pytest terminal summary."""
#: criterion number -> (passed, detail)
ACCEPTANCE = {}
