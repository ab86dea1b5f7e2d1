package com.demo.config;

public final class ApiPaths {
    public static final String BASE_SEGMENT = "/settings";
    public static final String BASE = "/api" + BASE_SEGMENT;
    public static final String FLAGS = "/flags";
}
