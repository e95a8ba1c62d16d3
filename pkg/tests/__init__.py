# Anterial toolkit - test suite
