# Subcommand router
