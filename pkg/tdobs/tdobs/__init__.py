# tdobs - treedepth obstruction sets
# Django project hosting the enumeration pipeline and its management commands
