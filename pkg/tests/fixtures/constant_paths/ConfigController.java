package com.demo.config;

import org.springframework.web.bind.annotation.GetMapping;
import org.springframework.web.bind.annotation.RequestMapping;
import org.springframework.web.bind.annotation.RestController;

@RestController
@RequestMapping(ApiPaths.BASE)
public class ConfigController {

    private static final String VERSION_PATH = "/version";

    @GetMapping(VERSION_PATH)
    public String version() {
        return "1.0";
    }

    @GetMapping(ApiPaths.FLAGS)
    public String flags() {
        return "none";
    }
}
