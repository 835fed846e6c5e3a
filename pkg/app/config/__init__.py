# app.config: environment-selected settings and logging setup
