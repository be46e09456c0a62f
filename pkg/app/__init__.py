# Backend application package 