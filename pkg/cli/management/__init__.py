# Management commands for the cli app
