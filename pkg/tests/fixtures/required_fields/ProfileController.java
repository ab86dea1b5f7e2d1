package com.demo.profiles;

import org.springframework.web.bind.annotation.PostMapping;
import org.springframework.web.bind.annotation.RequestBody;
import org.springframework.web.bind.annotation.RestController;

@RestController
public class ProfileController {

    @PostMapping("/profiles")
    public void save(@RequestBody UserProfile profile) {
    }
}
